#include "spinorlab/fock.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinorlab/config.hpp"
#include "spinorlab/error.hpp"

namespace spinorlab::fock {

namespace {

const std::array<Matrix, kModes>& creation_table() {
  static const std::array<Matrix, kModes> table = [] {
    std::array<Matrix, kModes> out;
    for (int m = 0; m < kModes; ++m) out[m] = mode_creation_matrix(ModeIndex::from_linear(m));
    return out;
  }();
  return table;
}

const Matrix& creation(Arm arm, Spin spin) {
  return creation_table()[ModeIndex{arm, spin}.linear()];
}

Matrix annihilation(Arm arm, Spin spin) { return creation(arm, spin).adjoint(); }

Matrix number_operator(const BeamSplitter& bs, const DephaserSettings& deph, Detector which) {
  Matrix n = Matrix::Zero();
  for (Spin s : kSpins) {
    const Matrix c = output_annihilation(bs, deph, which, s);
    n += c.adjoint() * c;
  }
  return n;
}

double real_trace(const Matrix& m) { return m.trace().real(); }

}  // namespace

Density::Density(const Matrix& rho) : rho_(rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= tol::kAlgebraic)) throw InvalidDensityError("density is not Hermitian");
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > tol::kAlgebraic) {
    throw InvalidDensityError("density trace is " + std::to_string(tr.real()) + ", not 1");
  }
  rho_ = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidDensityError("density has a negative eigenvalue");
  }
}

Density Density::pure(const Vector& psi) {
  if (std::abs(psi.norm() - 1.0) > tol::kRenormalize) {
    throw InvalidDensityError("pure state is not normalized");
  }
  const Vector v = psi.normalized();
  return Density(v * v.adjoint());
}

BeamSplitter::BeamSplitter(cplx t_, cplx r_, cplx t_p_, cplx r_p_, bool lossless_)
    : t(t_), r(r_), t_p(t_p_), r_p(r_p_), lossless(lossless_) {
  if (lossless && !satisfies_lossless(tol::kAlgebraic)) {
    throw std::invalid_argument("BeamSplitter: amplitudes violate the lossless constraints");
  }
}

BeamSplitter BeamSplitter::symmetric(cplx t, cplx r, bool lossless) {
  return BeamSplitter(t, r, std::conj(t), r, lossless);
}

bool BeamSplitter::satisfies_lossless(double tolerance) const {
  Eigen::Matrix2cd m;
  m << t, r_p, r, t_p;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tolerance &&
         (m * m.adjoint() - id).cwiseAbs().maxCoeff() <= tolerance;
}

bool BeamSplitter::is_symmetric(double tolerance) const {
  return std::abs(r_p - r) <= tolerance && std::abs(t_p - std::conj(t)) <= tolerance;
}

double DephaserSettings::phi(Arm arm, Spin spin) const {
  if (arm == Arm::a) return spin == Spin::up ? phi_a_up : phi_a_down;
  return spin == Spin::up ? phi_b_up : phi_b_down;
}

double DephaserSettings::delta_phi(Spin spin) const {
  return phi(Arm::b, spin) - phi(Arm::a, spin);
}

double DephaserSettings::spin_splitting(Arm arm) const {
  return phi(arm, Spin::up) - phi(arm, Spin::down);
}

Matrix mode_creation_matrix(ModeIndex m) {
  const int bit = m.linear();
  Matrix c = Matrix::Zero();
  for (unsigned n = 0; n < kDim; ++n) {
    if (n & (1u << bit)) continue;
    const int below = std::popcount(n & ((1u << bit) - 1u));
    c(n | (1u << bit), n) = (below % 2 == 0) ? 1.0 : -1.0;
  }
  return c;
}

Matrix mode_annihilation_matrix(ModeIndex m) { return mode_creation_matrix(m).adjoint(); }

std::array<Eigen::Matrix2cd, 2> output_operators(const BeamSplitter& bs,
                                                 const DephaserSettings& deph) {
  std::array<Eigen::Matrix2cd, 2> out;
  for (Spin s : kSpins) {
    const cplx ea = std::polar(1.0, deph.phi(Arm::a, s));
    const cplx eb = std::polar(1.0, deph.phi(Arm::b, s));
    Eigen::Matrix2cd& p = out[static_cast<int>(s)];
    p << bs.t * ea, bs.r_p * eb, bs.r * ea, bs.t_p * eb;
  }
  return out;
}

Matrix output_annihilation(const BeamSplitter& bs, const DephaserSettings& deph, Detector which,
                           Spin spin) {
  const Eigen::Matrix2cd p = output_operators(bs, deph)[static_cast<int>(spin)];
  const int row = which == Detector::Da ? 0 : 1;
  return p(row, 0) * annihilation(Arm::a, spin) + p(row, 1) * annihilation(Arm::b, spin);
}

double detector_rate(const Density& rho, const BeamSplitter& bs, const DephaserSettings& deph,
                     Detector which) {
  return real_trace(rho.matrix() * number_operator(bs, deph, which));
}

DetectorRates detector_rate_closed_form(const BeamSplitter& bs, const DephaserSettings& deph,
                                        SourceKind source) {
  if (source != SourceKind::unpolarized_mixture) {
    throw EngineError("closed-form detector rates exist only for the unpolarized mixture");
  }
  // Per spin: Tr(rho d_i^dag d_i) = 1/4 and Tr(rho d_a^dag d_b) = (1/4) e^{i beta}, beta = pi.
  constexpr double beta = std::numbers::pi;
  const cplx ta = std::conj(bs.t) * bs.r_p;
  const cplx rb = std::conj(bs.r) * bs.t_p;
  const double alpha = std::arg(ta);
  const double gamma = std::arg(rb);
  double fringe_a = 0.0;
  double fringe_b = 0.0;
  for (Spin s : kSpins) {
    fringe_a += std::cos(alpha + beta + deph.delta_phi(s));
    fringe_b += std::cos(gamma + beta + deph.delta_phi(s));
  }
  return {0.5 * (std::norm(bs.t) + std::norm(bs.r_p)) + 0.5 * std::abs(ta) * fringe_a,
          0.5 * (std::norm(bs.r) + std::norm(bs.t_p)) + 0.5 * std::abs(rb) * fringe_b};
}

double coincidence_rate(const Density& rho, const BeamSplitter& bs,
                        const DephaserSettings& deph) {
  return real_trace(rho.matrix() * number_operator(bs, deph, Detector::Da) *
                    number_operator(bs, deph, Detector::Db));
}

double coincidence_rate_normal_ordered(const Density& rho, const BeamSplitter& bs,
                                       const DephaserSettings& deph) {
  double sum = 0.0;
  for (Spin s : kSpins) {
    const Matrix ca = output_annihilation(bs, deph, Detector::Da, s);
    for (Spin sp : kSpins) {
      const Matrix pair = output_annihilation(bs, deph, Detector::Db, sp) * ca;
      sum += real_trace(rho.matrix() * pair.adjoint() * pair);
    }
  }
  return sum;
}

double coincidence_singlet_closed_form(const BeamSplitter& bs, const DephaserSettings& deph) {
  if (!bs.is_symmetric(tol::kAlgebraic)) {
    throw EngineError("singlet closed form needs a symmetric splitter (r' = r, t' = t*)");
  }
  const cplx kappa = bs.t * bs.t_p * std::conj(bs.r * bs.r_p);
  const double split = deph.spin_splitting(Arm::b) - deph.spin_splitting(Arm::a);
  return std::norm(bs.t * bs.t_p) + std::norm(bs.r * bs.r_p) +
         2.0 * kappa.real() * std::cos(split);
}

Density build_source(SourceKind kind) {
  Vector vac = Vector::Zero();
  vac(0) = 1.0;
  const double s = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case SourceKind::vacuum:
      return Density::pure(vac);
    case SourceKind::singlet: {
      // (|up_a down_b> - |down_a up_b>) / sqrt(2), arm-a operator applied last.
      const Vector psi = s * (creation(Arm::a, Spin::up) * creation(Arm::b, Spin::down) * vac -
                              creation(Arm::a, Spin::down) * creation(Arm::b, Spin::up) * vac);
      return Density::pure(psi);
    }
    case SourceKind::unpolarized_mixture: {
      Matrix rho = Matrix::Zero();
      for (Spin sp : kSpins) {
        const Vector psi = s * (creation(Arm::a, sp) * vac - creation(Arm::b, sp) * vac);
        rho += 0.5 * psi * psi.adjoint();
      }
      return Density(rho);
    }
  }
  throw std::invalid_argument("build_source: unknown source kind");
}

cplx arm_coherence(const Density& rho, Spin spin) {
  return (rho.matrix() * creation(Arm::a, spin) * annihilation(Arm::b, spin)).trace();
}

double particle_number(const Density& rho) {
  double n = 0.0;
  for (int m = 0; m < kModes; ++m) {
    const Matrix& c = creation_table()[m];
    n += real_trace(rho.matrix() * c * c.adjoint());
  }
  return n;
}

PhaseReadout interference_readout(const Density& rho, const DephaserSettings& deph) {
  cplx fringe{0.0, 0.0};
  cplx reference{0.0, 0.0};
  for (Spin s : kSpins) {
    const cplx c = arm_coherence(rho, s);
    fringe += std::polar(1.0, deph.delta_phi(s)) * c;
    reference += c;
  }
  if (std::abs(reference) < tol::kVisibilityFloor) return {};
  return PhaseReadout::from_amplitude(fringe / reference);
}

PhaseReadout unpolarized_readout_closed_form(const DephaserSettings& deph) {
  // diag(e^{i up}, e^{i down}) = e^{i mean} * (rotation about z by down - up).
  const double up = deph.delta_phi(Spin::up);
  const double down = deph.delta_phi(Spin::down);
  const double mean = 0.5 * (up + down);
  const Su2Element internal = rotation(Vec3::UnitZ(), down - up);
  const PhaseReadout inner = mixed_state_phase(internal, QubitMixedState(0.0, Vec3::UnitZ()));
  PhaseReadout out = inner;
  if (inner.phase) out.phase = wrap_phase(mean + *inner.phase);
  return out;
}

BeamSplitter werner_splitter(double c, double a) {
  if (!(a > 0.0 && a <= c)) throw std::invalid_argument("werner_splitter: need 0 < A <= C");
  const double t_mag = std::sqrt(c + std::sqrt(c * c - a * a));
  const double rp_mag = a / t_mag;
  const double root_a = std::sqrt(a);
  // arg(t* r') = 0 and arg(r* t') = pi; shifted by the source phase pi these
  // are the total fringe offsets pi and 0.
  return BeamSplitter(t_mag, root_a, -root_a, rp_mag, false);
}

DephaserSettings werner_dephasers(double delta, double dphi) {
  return {0.0, 0.0, delta + dphi, delta - dphi};
}

DetectorRates werner_rates(double c, double a, double delta, double dphi) {
  const double fringe = std::cos(delta) * std::cos(dphi);
  return {c - a * fringe, a * (1.0 + fringe)};
}

double milman_mosseri_probability(double phi, int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * std::abs(sign - std::cos(phi));
}

}  // namespace spinorlab::fock
