#pragma once

// Hand-built ball paths through the surface, and random closed
// rotation schedules whose SU(2) endpoint is known by construction.

#include <cmath>
#include <random>
#include <vector>

#include "spinorlab/so3_topology.hpp"
#include "support/oracles.hpp"

namespace testpaths {

using spinorlab::So3Path;
using spinorlab::So3Point;
using spinorlab::Vec3;

/// Straight segment from `a` to `b` in the ball, `n` samples including both ends.
inline void segment(std::vector<So3Point>& out, const Vec3& a, const Vec3& b, int n) {
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    out.emplace_back((1.0 - s) * a + s * b);
  }
}

/// O -> pi z (= -pi z) -> O.
inline So3Path through_antipode() {
  const double pi = oracle::kPi;
  std::vector<So3Point> s;
  segment(s, Vec3::Zero(), Vec3(0, 0, pi), 12);
  segment(s, Vec3(0, 0, -pi), Vec3::Zero(), 12);
  return So3Path(std::move(s), true);
}

/// O -> A = pi z; A' = -pi z -> B = pi x along a chord; B' = -pi x -> O.
inline So3Path two_antipodal_crossings() {
  const double pi = oracle::kPi;
  std::vector<So3Point> s;
  segment(s, Vec3::Zero(), Vec3(0, 0, pi), 12);
  segment(s, Vec3(0, 0, -pi), Vec3(pi, 0, 0), 20);
  segment(s, Vec3(-pi, 0, 0), Vec3::Zero(), 12);
  return So3Path(std::move(s), true);
}

struct Schedule {
  std::vector<spinorlab::RotationLeg> legs;
  int expected_sign;
};

/// One to four random legs plus a closing leg. The closing angle is theta or
/// theta - 2 pi at random, so the SU(2) product is +I or -I respectively.
inline Schedule random_closed_schedule(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> angle(-2.0 * oracle::kPi, 2.0 * oracle::kPi);
  std::bernoulli_distribution flip(0.5);
  Schedule out;
  spinorlab::Su2Element net;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const spinorlab::RotationLeg leg{oracle::random_unit(rng), angle(rng)};
    out.legs.push_back(leg);
    net = spinorlab::rotation(leg.axis, leg.angle) * net;
  }
  // net^dagger = cos(theta/2) - i sin(theta/2) n.sigma with theta in [0, 2 pi].
  const spinorlab::Su2Element inv = net.adjoint();
  const Vec3 vec(-inv.b().imag(), -inv.b().real(), -inv.a().imag());
  const double theta = 2.0 * std::atan2(vec.norm(), inv.a().real());
  const Vec3 axis = vec.norm() > 0.0 ? Vec3(vec.normalized()) : Vec3::UnitZ();
  const bool negative = flip(rng);
  out.legs.push_back({axis, negative ? theta - 2.0 * oracle::kPi : theta});
  out.expected_sign = negative ? -1 : 1;
  return out;
}

}  // namespace testpaths
