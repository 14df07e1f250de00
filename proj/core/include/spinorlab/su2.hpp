#pragma once

// SU(2) elements, two-qubit maximally entangled states and their evolution
// under single-qubit spin Hamiltonians.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace spinorlab {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;

/// Element of SU(2) stored as the first row (a, b) of [[a, b], [-b*, a*]].
///
/// Construction renormalizes amplitudes whose squared norm is within
/// tol::kRenormalize of one and throws NormalizationError otherwise.
class Su2Element {
 public:
  Su2Element() = default;
  Su2Element(cplx a, cplx b);

  static Su2Element identity() { return {}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }

  Eigen::Matrix2cd matrix() const;

  Su2Element adjoint() const;
  Su2Element transpose() const;
  Su2Element operator-() const;

  friend Su2Element operator*(const Su2Element& lhs, const Su2Element& rhs);
  friend bool operator==(const Su2Element&, const Su2Element&) = default;

  /// Frobenius distance between the 2x2 matrices.
  friend double distance(const Su2Element& lhs, const Su2Element& rhs);

 private:
  struct Unchecked {};
  Su2Element(cplx a, cplx b, Unchecked) : a_(a), b_(b) {}

  cplx a_{1.0, 0.0};
  cplx b_{0.0, 0.0};
};

/// Two-qubit maximally entangled state
/// (alpha|00> + beta|01> - beta*|10> + alpha*|11>) / sqrt(2).
class MesState {
 public:
  MesState() = default;
  MesState(cplx alpha, cplx beta);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }

  /// Amplitudes in the |00>, |01>, |10>, |11> basis.
  std::array<cplx, 4> two_qubit_vector() const;

  friend bool operator==(const MesState&, const MesState&) = default;

 private:
  cplx alpha_{1.0, 0.0};
  cplx beta_{0.0, 0.0};
};

Su2Element mes_to_matrix(const MesState& state);
MesState matrix_to_mes(const Su2Element& u);

/// Constant-direction field: H = omega (sigma . n) / 2 in units hbar = 1.
struct AxisAngleField {
  AxisAngleField(double omega, const Vec3& n);

  double omega;
  Vec3 n;
};

/// Field of strength omega0 whose direction precesses about z:
/// n(t) = (sin theta cos(omega t), sin theta sin(omega t), cos theta).
struct PrecessingField {
  PrecessingField(double omega, double omega0, double theta);

  Vec3 axis_at(double t) const;

  double omega;
  double omega0;
  double theta;
};

/// Proper rotation of R^3 (orthogonal, det +1).
class So3Rotation {
 public:
  explicit So3Rotation(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  friend So3Rotation operator*(const So3Rotation& lhs, const So3Rotation& rhs) {
    return So3Rotation(lhs.m_ * rhs.m_);
  }

 private:
  Eigen::Matrix3d m_;
};

/// exp(-i omega t (n . sigma) / 2).
Su2Element propagator_constant_axis(const AxisAngleField& field, double t);

/// Rotation by `angle` about unit axis `n` in the spinor representation.
Su2Element rotation(const Vec3& n, double angle);

/// Solves i dU/dt = (omega0 / 2)(sigma . n(t)) U, U(0) = I, with `steps`
/// classical Runge-Kutta steps. The state is pulled back onto SU(2) after every
/// step. Throws IntegrationAccuracyError when the step lies outside the
/// integrator's stability region.
Su2Element propagator_precessing_axis(const PrecessingField& field, double t, int steps);

/// Same as above, but also integrates with 2*steps and throws
/// IntegrationAccuracyError when the step-doubling error estimate exceeds
/// `tolerance`. Returns the finer solution.
Su2Element propagator_precessing_axis(const PrecessingField& field, double t, int steps,
                                      double tolerance);

/// U(t_k) for t_k = k * t_end / intervals, k = 0..intervals, continuing one
/// integration with `steps_per_interval` steps between samples.
std::vector<Su2Element> propagator_precessing_series(const PrecessingField& field, double t_end,
                                                     int intervals, int steps_per_interval);

/// Hamiltonian acting on the first qubit: M(t) = U M(0).
MesState evolve_first_qubit(const MesState& state, const Su2Element& u);

/// Hamiltonian acting on the second qubit: M(t) = M(0) U^T.
MesState evolve_second_qubit(const MesState& state, const Su2Element& u);

/// Adjoint action R_ij = Tr(sigma_i u sigma_j u^dagger) / 2.
So3Rotation project_to_so3(const Su2Element& u);

}  // namespace spinorlab
