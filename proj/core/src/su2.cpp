#include "spinorlab/su2.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "spinorlab/config.hpp"
#include "spinorlab/error.hpp"

namespace spinorlab {

namespace {

// Returns the amplitudes scaled onto the unit sphere, or throws.
std::pair<cplx, cplx> normalized_pair(cplx x, cplx y, const char* what) {
  const double norm2 = std::norm(x) + std::norm(y);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tol::kRenormalize) {
    throw NormalizationError(std::string(what) + ": |x|^2 + |y|^2 = " + std::to_string(norm2) +
                             " is not 1");
  }
  if (norm2 == 1.0) return {x, y};
  const double s = 1.0 / std::sqrt(norm2);
  return {x * s, y * s};
}

// d/dt of the first column (a, -b*) of U: -i (omega0 / 2)(sigma . n) col.
std::array<cplx, 2> rhs(const PrecessingField& f, double t, const std::array<cplx, 2>& col) {
  const Vec3 n = f.axis_at(t);
  const cplx minus_i_half_w{0.0, -0.5 * f.omega0};
  const cplx n_minus{n.x(), -n.y()};
  const cplx n_plus{n.x(), n.y()};
  return {minus_i_half_w * (n.z() * col[0] + n_minus * col[1]),
          minus_i_half_w * (n_plus * col[0] - n.z() * col[1])};
}

void rk4_step(const PrecessingField& f, double t, double h, std::array<cplx, 2>& col) {
  auto axpy = [](const std::array<cplx, 2>& y, double s, const std::array<cplx, 2>& k) {
    return std::array<cplx, 2>{y[0] + s * k[0], y[1] + s * k[1]};
  };
  const auto k1 = rhs(f, t, col);
  const auto k2 = rhs(f, t + 0.5 * h, axpy(col, 0.5 * h, k1));
  const auto k3 = rhs(f, t + 0.5 * h, axpy(col, 0.5 * h, k2));
  const auto k4 = rhs(f, t + h, axpy(col, h, k3));
  for (int i = 0; i < 2; ++i) {
    col[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  // Back onto the unit sphere; the second column is implied by the SU(2) form.
  const double s = 1.0 / std::sqrt(std::norm(col[0]) + std::norm(col[1]));
  col[0] *= s;
  col[1] *= s;
}

void check_step(const PrecessingField& f, double h) {
  // RK4 is stable on the imaginary axis up to |lambda h| = 2 sqrt(2).
  const double rate = 0.5 * std::abs(f.omega0) + std::abs(f.omega);
  if (rate * h > 2.0 * std::numbers::sqrt2) {
    throw IntegrationAccuracyError("step " + std::to_string(h) +
                                   " is outside the RK4 stability region for this field");
  }
}

Su2Element from_first_column(const std::array<cplx, 2>& col) {
  return Su2Element(col[0], -std::conj(col[1]));
}

}  // namespace

Su2Element::Su2Element(cplx a, cplx b) {
  std::tie(a_, b_) = normalized_pair(a, b, "Su2Element");
}

Eigen::Matrix2cd Su2Element::matrix() const {
  Eigen::Matrix2cd m;
  m << a_, b_, -std::conj(b_), std::conj(a_);
  return m;
}

Su2Element Su2Element::adjoint() const { return {std::conj(a_), -b_, Unchecked{}}; }

Su2Element Su2Element::transpose() const { return {a_, -std::conj(b_), Unchecked{}}; }

Su2Element Su2Element::operator-() const { return {-a_, -b_, Unchecked{}}; }

Su2Element operator*(const Su2Element& lhs, const Su2Element& rhs) {
  // Closure is exact in exact arithmetic; the checked constructor absorbs round-off.
  return Su2Element(lhs.a_ * rhs.a_ - lhs.b_ * std::conj(rhs.b_),
                    lhs.a_ * rhs.b_ + lhs.b_ * std::conj(rhs.a_));
}

double distance(const Su2Element& lhs, const Su2Element& rhs) {
  // Both rows carry the same norm, so ||A - B||_F^2 = 2 (|da|^2 + |db|^2).
  return std::sqrt(2.0 * (std::norm(lhs.a_ - rhs.a_) + std::norm(lhs.b_ - rhs.b_)));
}

MesState::MesState(cplx alpha, cplx beta) {
  std::tie(alpha_, beta_) = normalized_pair(alpha, beta, "MesState");
}

std::array<cplx, 4> MesState::two_qubit_vector() const {
  const double s = 1.0 / std::numbers::sqrt2;
  return {s * alpha_, s * beta_, -s * std::conj(beta_), s * std::conj(alpha_)};
}

Su2Element mes_to_matrix(const MesState& state) { return {state.alpha(), state.beta()}; }

MesState matrix_to_mes(const Su2Element& u) { return {u.a(), u.b()}; }

AxisAngleField::AxisAngleField(double omega_, const Vec3& n_) : omega(omega_), n(n_) {
  const double len = n.norm();
  if (!std::isfinite(omega) || std::abs(len - 1.0) > tol::kRenormalize) {
    throw NormalizationError("AxisAngleField: axis must be a unit vector");
  }
  n /= len;
}

PrecessingField::PrecessingField(double omega_, double omega0_, double theta_)
    : omega(omega_), omega0(omega0_), theta(theta_) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("PrecessingField: theta must lie in [0, pi]");
  }
  if (!std::isfinite(omega) || !std::isfinite(omega0)) {
    throw std::invalid_argument("PrecessingField: frequencies must be finite");
  }
}

Vec3 PrecessingField::axis_at(double t) const {
  const double s = std::sin(theta);
  return {s * std::cos(omega * t), s * std::sin(omega * t), std::cos(theta)};
}

So3Rotation::So3Rotation(const Eigen::Matrix3d& m) : m_(m) {
  const double orth = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(orth <= 1e-10) || std::abs(m.determinant() - 1.0) > 1e-10) {
    throw std::invalid_argument("So3Rotation: matrix is not a proper rotation");
  }
}

Su2Element propagator_constant_axis(const AxisAngleField& field, double t) {
  if (t < 0.0) throw std::invalid_argument("propagator_constant_axis: t must be >= 0");
  const double half = 0.5 * field.omega * t;
  const double c = std::cos(half);
  const double s = std::sin(half);
  const Vec3& n = field.n;
  return Su2Element(cplx{c, -n.z() * s}, cplx{0.0, -1.0} * cplx{n.x(), -n.y()} * s);
}

Su2Element rotation(const Vec3& n, double angle) {
  return propagator_constant_axis(AxisAngleField(angle, n.normalized()), 1.0);
}

Su2Element propagator_precessing_axis(const PrecessingField& field, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("propagator_precessing_axis: steps must be >= 1");
  if (t < 0.0) throw std::invalid_argument("propagator_precessing_axis: t must be >= 0");
  const double h = t / steps;
  check_step(field, h);
  std::array<cplx, 2> col{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
  for (int k = 0; k < steps; ++k) rk4_step(field, k * h, h, col);
  return from_first_column(col);
}

Su2Element propagator_precessing_axis(const PrecessingField& field, double t, int steps,
                                      double tolerance) {
  const Su2Element coarse = propagator_precessing_axis(field, t, steps);
  const Su2Element fine = propagator_precessing_axis(field, t, 2 * steps);
  // Richardson estimate of the fine-grid error for a fourth-order method.
  const double estimate = distance(coarse, fine) / 15.0;
  if (estimate > tolerance) {
    throw IntegrationAccuracyError("propagator_precessing_axis: estimated error " +
                                   std::to_string(estimate) + " exceeds tolerance with " +
                                   std::to_string(2 * steps) + " steps");
  }
  return fine;
}

std::vector<Su2Element> propagator_precessing_series(const PrecessingField& field, double t_end,
                                                     int intervals, int steps_per_interval) {
  if (intervals < 1 || steps_per_interval < 1) {
    throw std::invalid_argument("propagator_precessing_series: counts must be >= 1");
  }
  const double h = t_end / (static_cast<double>(intervals) * steps_per_interval);
  check_step(field, h);
  std::vector<Su2Element> out;
  out.reserve(intervals + 1);
  std::array<cplx, 2> col{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
  out.push_back(Su2Element::identity());
  long step = 0;
  for (int i = 0; i < intervals; ++i) {
    for (int k = 0; k < steps_per_interval; ++k, ++step) rk4_step(field, step * h, h, col);
    out.push_back(from_first_column(col));
  }
  return out;
}

MesState evolve_first_qubit(const MesState& state, const Su2Element& u) {
  return matrix_to_mes(u * mes_to_matrix(state));
}

MesState evolve_second_qubit(const MesState& state, const Su2Element& u) {
  return matrix_to_mes(mes_to_matrix(state) * u.transpose());
}

So3Rotation project_to_so3(const Su2Element& u) {
  static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
    std::array<Eigen::Matrix2cd, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, cplx{0, -1}, cplx{0, 1}, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  const Eigen::Matrix2cd m = u.matrix();
  const Eigen::Matrix2cd m_dag = m.adjoint();
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) = 0.5 * (sigma[i] * m * sigma[j] * m_dag).trace().real();
    }
  }
  return So3Rotation(r);
}

}  // namespace spinorlab
