#include "spinorlab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinorlab/config.hpp"
#include "spinorlab/error.hpp"

namespace spinorlab {

namespace {

using Vec4 = std::array<cplx, 4>;

cplx inner(const Vec4& x, const Vec4& y) {
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < 4; ++k) s += std::conj(x[k]) * y[k];
  return s;
}

// Second-order derivative estimates on a possibly non-uniform grid.
std::vector<Vec4> derivatives(std::span<const double> t, std::span<const Vec4> v) {
  const std::size_t n = t.size();
  std::vector<Vec4> d(n);
  auto combine = [](double c0, const Vec4& a, double c1, const Vec4& b, double c2,
                    const Vec4& c) {
    Vec4 out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = c0 * a[k] + c1 * b[k] + c2 * c[k];
    return out;
  };
  if (n == 2) {
    const double h = t[1] - t[0];
    Vec4 fwd;
    for (std::size_t k = 0; k < 4; ++k) fwd[k] = (v[1][k] - v[0][k]) / h;
    d[0] = d[1] = fwd;
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    d[i] = combine(-h2 / (h1 * (h1 + h2)), v[i - 1], (h2 - h1) / (h1 * h2), v[i],
                   h1 / (h2 * (h1 + h2)), v[i + 1]);
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    d[0] = combine(-(2.0 * h1 + h2) / (h1 * (h1 + h2)), v[0], (h1 + h2) / (h1 * h2), v[1],
                   -h1 / (h2 * (h1 + h2)), v[2]);
  }
  {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    d[n - 1] = combine(h2 / (h1 * (h1 + h2)), v[n - 3], -(h1 + h2) / (h1 * h2), v[n - 2],
                       (2.0 * h2 + h1) / (h2 * (h1 + h2)), v[n - 1]);
  }
  return d;
}

void check_grid(std::span<const double> times, std::size_t count) {
  if (times.size() < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
  if (times.size() != count) throw std::invalid_argument("times and states differ in length");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("trajectory times must be strictly increasing");
    }
  }
}

std::vector<double> times_of(const MesTrajectory& traj) {
  std::vector<double> t;
  t.reserve(traj.size());
  for (const auto& s : traj.samples()) t.push_back(s.t);
  return t;
}

std::vector<Vec4> vectors_of(const MesTrajectory& traj) {
  std::vector<Vec4> v;
  v.reserve(traj.size());
  for (const auto& s : traj.samples()) v.push_back(s.state.two_qubit_vector());
  return v;
}

}  // namespace

MesTrajectory::MesTrajectory(std::vector<TimedState> samples) : samples_(std::move(samples)) {
  std::vector<double> t = times_of(*this);
  check_grid(t, t.size());
}

MesTrajectory MesTrajectory::from_propagators(const MesState& initial,
                                              std::span<const double> times,
                                              std::span<const Su2Element> propagators,
                                              Qubit which) {
  if (times.size() != propagators.size()) {
    throw std::invalid_argument("from_propagators: times and propagators differ in length");
  }
  std::vector<TimedState> samples;
  samples.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const MesState s = which == Qubit::first ? evolve_first_qubit(initial, propagators[i])
                                             : evolve_second_qubit(initial, propagators[i]);
    samples.push_back({times[i], s});
  }
  return MesTrajectory(std::move(samples));
}

PhaseReadout PhaseReadout::from_amplitude(cplx z) {
  PhaseReadout out;
  out.visibility = std::abs(z);
  if (out.visibility >= tol::kVisibilityFloor) out.phase = wrap_phase(std::arg(z));
  return out;
}

QubitMixedState::QubitMixedState(double r, const Vec3& axis) : r_(r), axis_(axis) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("QubitMixedState: r must be in [0,1]");
  const double len = axis.norm();
  if (std::abs(len - 1.0) > tol::kRenormalize) {
    throw NormalizationError("QubitMixedState: axis must be a unit vector");
  }
  axis_ /= len;
}

Eigen::Matrix2cd QubitMixedState::density() const {
  const Vec3 b = r_ * axis_;
  Eigen::Matrix2cd rho;
  rho << 0.5 * (1.0 + b.z()), 0.5 * cplx{b.x(), -b.y()}, 0.5 * cplx{b.x(), b.y()},
      0.5 * (1.0 - b.z());
  return rho;
}

std::array<QubitMixedState::Component, 2> QubitMixedState::eigen_decomposition() const {
  const double polar = std::acos(std::clamp(axis_.z(), -1.0, 1.0));
  const double azimuth = std::atan2(axis_.y(), axis_.x());
  const double c = std::cos(0.5 * polar);
  const double s = std::sin(0.5 * polar);
  const cplx e = std::polar(1.0, azimuth);
  return {Component{0.5 * (1.0 + r_), {cplx{c, 0.0}, e * s}},
          Component{0.5 * (1.0 - r_), {-std::conj(e) * s, cplx{c, 0.0}}}};
}

double dynamical_phase(std::span<const double> times, std::span<const Vec4> vectors) {
  check_grid(times, vectors.size());
  const std::vector<Vec4> d = derivatives(times, vectors);
  cplx integral{0.0, 0.0};
  for (std::size_t i = 1; i < times.size(); ++i) {
    const cplx f0 = inner(vectors[i - 1], d[i - 1]);
    const cplx f1 = inner(vectors[i], d[i]);
    integral += 0.5 * (times[i] - times[i - 1]) * (f0 + f1);
  }
  // -i * integral; the real part of <psi|dpsi> only measures norm drift.
  return (cplx{0.0, -1.0} * integral).real();
}

double dynamical_phase(const MesTrajectory& traj) {
  const auto t = times_of(traj);
  const auto v = vectors_of(traj);
  return dynamical_phase(t, v);
}

std::vector<cplx> connection_samples(const MesTrajectory& traj) {
  const auto t = times_of(traj);
  const auto v = vectors_of(traj);
  const auto d = derivatives(t, v);
  std::vector<cplx> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = inner(v[i], d[i]);
  return out;
}

double pancharatnam_overlap(const MesState& a, const MesState& b) {
  return (std::conj(a.alpha()) * b.alpha() + std::conj(a.beta()) * b.beta()).real();
}

std::optional<double> geometric_phase(const MesTrajectory& traj) {
  const double overlap = pancharatnam_overlap(traj.front(), traj.back());
  if (std::abs(overlap) < tol::kOverlapFloor) return std::nullopt;
  const double total = overlap > 0.0 ? 0.0 : std::numbers::pi;
  const double dyn = dynamical_phase(traj);
  // Parallel transport: the connection term vanishes and Phi_g is the total phase.
  if (std::abs(dyn) <= tol::kParallelTransport) return total;
  return wrap_phase(total - dyn);
}

PhaseReadout mixed_state_phase(const Su2Element& u, const QubitMixedState& rho0) {
  // Tr[U (I + r n.sigma)/2] = Re a + i r (n_x Im b + n_y Re b + n_z Im a).
  const Vec3& n = rho0.axis();
  const double im =
      rho0.r() * (n.x() * u.b().imag() + n.y() * u.b().real() + n.z() * u.a().imag());
  return PhaseReadout::from_amplitude(cplx{u.a().real(), im});
}

double interferometer_intensity(double chi, const Su2Element& u, const QubitMixedState& rho0) {
  const PhaseReadout p = mixed_state_phase(u, rho0);
  if (!p.phase) return 1.0 + p.visibility * std::cos(chi);  // visibility is ~0 here
  return 1.0 + p.visibility * std::cos(chi - *p.phase);
}

PhaseReadout pure_state_readout(const Su2Element& u, const std::array<cplx, 2>& k) {
  if (std::abs(std::norm(k[0]) + std::norm(k[1]) - 1.0) > tol::kRenormalize) {
    throw NormalizationError("pure_state_readout: |k| must be 1");
  }
  Eigen::Vector2cd ket(k[0], k[1]);
  return PhaseReadout::from_amplitude(ket.dot(u.matrix() * ket));
}

double pure_state_profile(double chi, const Su2Element& u, const std::array<cplx, 2>& k) {
  const PhaseReadout p = pure_state_readout(u, k);
  if (!p.phase) return 1.0;
  return 1.0 + p.visibility * std::cos(chi - *p.phase);
}

double mixture_profile(double chi, const Su2Element& u, const QubitMixedState& rho0) {
  double sum = 0.0;
  for (const auto& c : rho0.eigen_decomposition()) {
    if (c.weight == 0.0) continue;
    sum += c.weight * pure_state_profile(chi, u, c.ket);
  }
  return sum;
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phi, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

}  // namespace spinorlab
