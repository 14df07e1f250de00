#pragma once

// Dynamical, Pancharatnam, geometric and mixed-state interference phases.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "spinorlab/su2.hpp"

namespace spinorlab {

struct TimedState {
  double t;
  MesState state;
};

/// Sampled MES evolution; at least two samples with strictly increasing times.
class MesTrajectory {
 public:
  explicit MesTrajectory(std::vector<TimedState> samples);

  /// Samples M(t_k) = U_k M(initial) (first qubit) or M(initial) U_k^T (second).
  enum class Qubit { first, second };
  static MesTrajectory from_propagators(const MesState& initial, std::span<const double> times,
                                        std::span<const Su2Element> propagators, Qubit which);

  const std::vector<TimedState>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const MesState& front() const { return samples_.front().state; }
  const MesState& back() const { return samples_.back().state; }

 private:
  std::vector<TimedState> samples_;
};

/// Interference contrast and phase of a complex amplitude nu e^{i phi}.
/// The phase lies in (-pi, pi] and is empty when nu < tol::kVisibilityFloor.
struct PhaseReadout {
  double visibility = 0.0;
  std::optional<double> phase;

  static PhaseReadout from_amplitude(cplx z);
};

/// Qubit density (I + r axis . sigma) / 2.
class QubitMixedState {
 public:
  QubitMixedState(double r, const Vec3& axis);

  double r() const { return r_; }
  const Vec3& axis() const { return axis_; }
  Eigen::Matrix2cd density() const;

  struct Component {
    double weight;
    std::array<cplx, 2> ket;
  };
  /// Closed-form eigenpairs, (1 + r)/2 along +axis first. At r = 0 the
  /// eigenvectors are still taken along the stored axis.
  std::array<Component, 2> eigen_decomposition() const;

 private:
  double r_;
  Vec3 axis_;
};

/// -i * integral <psi|dpsi/dt> dt over arbitrary sampled state vectors, using
/// second-order finite differences and the trapezoid rule.
double dynamical_phase(std::span<const double> times,
                       std::span<const std::array<cplx, 4>> vectors);

double dynamical_phase(const MesTrajectory& traj);

/// Finite-difference estimates of <psi|dpsi/dt> at every sample.
std::vector<cplx> connection_samples(const MesTrajectory& traj);

/// Re(alpha_a* alpha_b + beta_a* beta_b), the (always real) MES overlap.
double pancharatnam_overlap(const MesState& a, const MesState& b);

/// arg<psi(0)|psi(tau)> + i * integral <psi|dpsi/dt> dt. Empty at orthogonal
/// crossings (|overlap| < tol::kOverlapFloor).
std::optional<double> geometric_phase(const MesTrajectory& traj);

/// Tr[U_i rho0] as visibility and phase.
PhaseReadout mixed_state_phase(const Su2Element& u_internal, const QubitMixedState& rho0);

/// 1 + nu cos(chi - phi) for the mixed internal state.
double interferometer_intensity(double chi, const Su2Element& u_internal,
                                const QubitMixedState& rho0);

/// <k|U_i|k> as visibility and phase.
PhaseReadout pure_state_readout(const Su2Element& u_internal, const std::array<cplx, 2>& k);

/// 1 + |<k|U_i|k>| cos(chi - arg<k|U_i|k>); flat at 1 when the phase is undefined.
double pure_state_profile(double chi, const Su2Element& u_internal,
                          const std::array<cplx, 2>& k);

/// Weighted sum of pure_state_profile over the eigen-ensemble of rho0.
double mixture_profile(double chi, const Su2Element& u_internal, const QubitMixedState& rho0);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

}  // namespace spinorlab
