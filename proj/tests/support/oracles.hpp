#pragma once

// Reference computations that share no code with the library: dense matrix
// exponentials, a Kronecker-product Jordan-Wigner construction and random
// draws of valid inputs.

#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinorlab/fock.hpp"
#include "spinorlab/su2.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
inline constexpr double kPi = 3.14159265358979323846;

inline Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd m;
  switch (k) {
    case 0:
      m << 0, 1, 1, 0;
      break;
    case 1:
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    default:
      m << 1, 0, 0, -1;
  }
  return m;
}

inline Eigen::Matrix2cd sigma_dot(const Vec3& n) {
  return n.x() * pauli(0) + n.y() * pauli(1) + n.z() * pauli(2);
}

/// exp(-i H t) by Eigen's Pade-based matrix exponential.
inline Eigen::Matrix2cd evolve(const Eigen::Matrix2cd& h, double t) {
  const Eigen::Matrix2cd x = cplx(0.0, -t) * h;
  return x.exp();
}

/// Exact propagator for H(t) = (w0/2) sigma.n(t), n(t) precessing about z at
/// rate w, from the rotating frame: U = exp(-i w t sz/2) exp(-i H' t) with
/// H' = (w0/2) sigma.n(0) - (w/2) sz.
inline Eigen::Matrix2cd precessing_exact(double w, double w0, double theta, double t) {
  const Vec3 n0(std::sin(theta), 0.0, std::cos(theta));
  const Eigen::Matrix2cd h_rot = 0.5 * w0 * sigma_dot(n0) - 0.5 * w * pauli(2);
  return evolve(0.5 * w * pauli(2), t) * evolve(h_rot, t);
}

inline double frobenius(const Eigen::Matrix2cd& x, const Eigen::Matrix2cd& y) {
  return (x - y).norm();
}

/// Mode m annihilator as sigma^- on factor m with Z strings on lower modes.
/// The basis index is sum_m occ_m 2^m, so mode 3 is the leftmost factor.
inline spinorlab::fock::Matrix jw_annihilator(int mode) {
  Eigen::MatrixXcd lower(2, 2);
  lower << 0, 1, 0, 0;  // |0><1|
  Eigen::MatrixXcd z(2, 2);
  z << 1, 0, 0, -1;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int m = 3; m >= 0; --m) {
    const Eigen::MatrixXcd& f = m == mode ? lower : (m < mode ? z : id);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline spinorlab::Su2Element random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  cplx a(g(rng), g(rng));
  cplx b(g(rng), g(rng));
  const double s = std::sqrt(std::norm(a) + std::norm(b));
  return {a / s, b / s};
}

inline cplx random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  return std::polar(1.0, u(rng));
}

/// Lossless splitter from a random U(2) matrix [[t, r'], [r, t']].
inline spinorlab::fock::BeamSplitter random_lossless(std::mt19937_64& rng) {
  const spinorlab::Su2Element u = random_su2(rng);
  const cplx g = random_phase(rng);
  const Eigen::Matrix2cd m = g * u.matrix();
  return {m(0, 0), m(1, 0), m(1, 1), m(0, 1), true};
}

/// Lossless symmetric splitter: r' = r, t' = t*, which forces Re r = 0.
inline spinorlab::fock::BeamSplitter random_symmetric_lossless(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  const double x = u(rng);
  const cplx t = std::polar(std::cos(x), 0.0) * random_phase(rng);
  const double sign = u(rng) < kPi / 4 ? 1.0 : -1.0;
  const cplx r(0.0, sign * std::sin(x));
  return {t, r, std::conj(t), r, true};
}

inline spinorlab::fock::DephaserSettings random_dephasers(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
  return {u(rng), u(rng), u(rng), u(rng)};
}

/// Random density supported on the one-particle states {1, 2, 4, 8}.
inline spinorlab::fock::Matrix random_single_particle_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix4cd x;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) x(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::Matrix4cd rho4 = x * x.adjoint();
  rho4 /= rho4.trace().real();
  spinorlab::fock::Matrix rho = spinorlab::fock::Matrix::Zero();
  const int index[4] = {1, 2, 4, 8};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) rho(index[i], index[j]) = rho4(i, j);
  }
  return rho;
}

}  // namespace oracle
