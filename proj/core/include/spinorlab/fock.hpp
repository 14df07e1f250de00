#pragma once

// Second-quantized Mach-Zehnder interferometer on four fermionic modes
// (arm a/b x spin up/down). Every rate has a dense 16x16 evaluation; closed
// forms are provided where they exist and are checked against it.

#include <array>
#include <complex>

#include <Eigen/Core>

#include "spinorlab/phase.hpp"

namespace spinorlab::fock {

using cplx = std::complex<double>;

inline constexpr int kModes = 4;
inline constexpr int kDim = 16;

using Matrix = Eigen::Matrix<cplx, kDim, kDim>;
using Vector = Eigen::Matrix<cplx, kDim, 1>;

enum class Arm { a = 0, b = 1 };
enum class Spin { up = 0, down = 1 };

/// Fixed mode order (a up, a down, b up, b down) -> 0..3.
struct ModeIndex {
  Arm arm;
  Spin spin;

  constexpr int linear() const { return 2 * static_cast<int>(arm) + static_cast<int>(spin); }
  static constexpr ModeIndex from_linear(int m) {
    return {static_cast<Arm>(m / 2), static_cast<Spin>(m % 2)};
  }
  friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
};

inline constexpr std::array<Spin, 2> kSpins{Spin::up, Spin::down};

/// Hermitian, unit-trace, positive semidefinite operator on the 16-dim Fock
/// space. Throws InvalidDensityError otherwise.
class Density {
 public:
  explicit Density(const Matrix& rho);
  static Density pure(const Vector& psi);

  const Matrix& matrix() const { return rho_; }

 private:
  Matrix rho_;
};

/// Port amplitudes of the recombining splitter: c_a = t d_a + r' d_b,
/// c_b = r d_a + t' d_b (before dephasing).
struct BeamSplitter {
  /// With `lossless` set the amplitude matrix must be unitary within
  /// tol::kAlgebraic; otherwise any magnitudes are accepted.
  BeamSplitter(cplx t, cplx r, cplx t_p, cplx r_p, bool lossless = false);

  /// r' = r, t' = t*.
  static BeamSplitter symmetric(cplx t, cplx r, bool lossless = false);

  bool satisfies_lossless(double tolerance) const;
  bool is_symmetric(double tolerance) const;

  cplx t, r, t_p, r_p;
  bool lossless;
};

struct DephaserSettings {
  double phi_a_up = 0.0;
  double phi_a_down = 0.0;
  double phi_b_up = 0.0;
  double phi_b_down = 0.0;

  double phi(Arm arm, Spin spin) const;
  /// phi_b(s) - phi_a(s).
  double delta_phi(Spin spin) const;
  /// phi_x(up) - phi_x(down).
  double spin_splitting(Arm arm) const;
};

enum class Detector { Da, Db };
enum class SourceKind { unpolarized_mixture, singlet, vacuum };

struct DetectorRates {
  double da;
  double db;
};

Matrix mode_creation_matrix(ModeIndex m);
Matrix mode_annihilation_matrix(ModeIndex m);

/// Per-spin 2x2 map from (d_a, d_b) to (c_a_out, c_b_out).
std::array<Eigen::Matrix2cd, 2> output_operators(const BeamSplitter& bs,
                                                 const DephaserSettings& deph);

/// c_i_out(s) as a Fock-space matrix.
Matrix output_annihilation(const BeamSplitter& bs, const DephaserSettings& deph, Detector which,
                           Spin spin);

/// Tr(rho sum_s c_i_out(s)^dagger c_i_out(s)), evaluated densely.
double detector_rate(const Density& rho, const BeamSplitter& bs, const DephaserSettings& deph,
                     Detector which);

/// Closed-form rates for the unpolarized single-particle mixture; any other
/// source throws EngineError.
DetectorRates detector_rate_closed_form(const BeamSplitter& bs, const DephaserSettings& deph,
                                        SourceKind source);

/// Tr(rho N_a N_b) with N_i = sum_s c_i_out(s)^dagger c_i_out(s).
double coincidence_rate(const Density& rho, const BeamSplitter& bs,
                        const DephaserSettings& deph);

/// sum_{s,s'} Tr(rho c_a(s)^dagger c_b(s')^dagger c_b(s') c_a(s)): joint
/// detection of one particle at each detector. Equals coincidence_rate for
/// lossless splitters.
double coincidence_rate_normal_ordered(const Density& rho, const BeamSplitter& bs,
                                       const DephaserSettings& deph);

/// Singlet coincidences for a symmetric splitter (r' = r, t' = t*):
/// |t t'|^2 + |r r'|^2 + 2 Re(t t' (r r')^*) cos(dphi_b - dphi_a). Throws
/// EngineError for asymmetric splitters.
double coincidence_singlet_closed_form(const BeamSplitter& bs, const DephaserSettings& deph);

Density build_source(SourceKind kind);

/// Tr(rho d_a(s)^dagger d_b(s)).
cplx arm_coherence(const Density& rho, Spin spin);

/// Total input occupation Tr(rho sum_m d_m^dagger d_m).
double particle_number(const Density& rho);

/// Spin-resolved fringe relative to the undephased interferometer:
/// sum_s e^{i dphi(s)} C(s) / sum_s C(s) with C(s) = arm_coherence(rho, s).
/// Undefined when the source carries no single-particle arm coherence.
PhaseReadout interference_readout(const Density& rho, const DephaserSettings& deph);

/// Same readout computed through the internal-state trace Tr[U_i rho0] for a
/// spin-unpolarized source (rho0 = I/2, U_i = diag(e^{i dphi(up)}, e^{i dphi(down)})).
PhaseReadout unpolarized_readout_closed_form(const DephaserSettings& deph);

/// Splitter with |t|^2 + |r'|^2 = 2C, |t* r'| = A, |r| = |t'| = sqrt(A). The
/// phases are chosen so that, with the source phase arg Tr(rho d_a^dag d_b) = pi,
/// the rates take the form C - A cos(delta) cos(dphi) and A (1 + cos(delta) cos(dphi)).
/// Requires 0 < A <= C.
BeamSplitter werner_splitter(double c, double a);

/// phi_a = 0, phi_b(up/down) = delta +/- dphi.
DephaserSettings werner_dephasers(double delta, double dphi);

/// N(Da) = C - A cos(delta) cos(dphi), N(Db) = A (1 + cos(delta) cos(dphi)).
DetectorRates werner_rates(double c, double a, double delta, double dphi);

/// Two-photon coincidence probability (1/2)|(-1)^n - cos(phi)| of the
/// three-arm entangled-photon proposal.
double milman_mosseri_probability(double phi, int n);

}  // namespace spinorlab::fock
