#include "spinorlab/so3_topology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

#include "spinorlab/error.hpp"

namespace spinorlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSurfaceSnap = 1e-12;
constexpr double kSameRotation = 1e-9;

// Axis-times-sin(theta/2) part of u = cos(theta/2) I - i sin(theta/2) n.sigma.
Vec3 vector_part(const Su2Element& u) {
  return {-u.b().imag(), -u.b().real(), -u.a().imag()};
}

// Relative rotation angle in [0, pi]; atan2 keeps small angles well conditioned.
double relative_angle(const Su2Element& x, const Su2Element& y) {
  const Su2Element h = x.adjoint() * y;
  return 2.0 * std::atan2(vector_part(h).norm(), std::abs(h.a().real()));
}

// Number of places where consecutive ball samples are closer through the
// surface than through the interior.
int count_surface_jumps(const std::vector<So3Point>& samples) {
  int jumps = 0;
  Vec3 current = samples.front().v();
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const So3Point& p = samples[k];
    const double len = p.v().norm();
    if (len == 0.0) {
      current = p.v();
      continue;
    }
    // The same rotation continued past the surface on the opposite side.
    const Vec3 wrapped = p.v() - (2.0 * kPi / len) * p.v();
    if ((wrapped - current).norm() < (p.v() - current).norm()) {
      if (p.on_surface()) {
        current = wrapped;  // the antipodal representative, still inside the ball
      } else {
        ++jumps;
        current = p.v();
      }
    } else {
      current = p.v();
    }
  }
  return jumps;
}

}  // namespace

So3Point::So3Point(const Vec3& v) : v_(v) {
  const double len = v.norm();
  if (!std::isfinite(len) || len > kPi + kSurfaceSnap) {
    throw std::invalid_argument("So3Point: |v| must not exceed pi");
  }
  if (len >= kPi - kSurfaceSnap) {
    v_ *= kPi / len;
    surface_ = true;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(v_[i]) > kSurfaceSnap) {
        if (v_[i] < 0.0) v_ = -v_;
        break;
      }
    }
  }
}

Eigen::Matrix3d So3Point::rotation_matrix() const {
  const double theta = v_.norm();
  if (theta == 0.0) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(theta, v_ / theta).toRotationMatrix();
}

So3Point So3Point::from_su2(const Su2Element& u) {
  Vec3 axis = vector_part(u);
  double w = u.a().real();
  if (w < 0.0) {
    w = -w;
    axis = -axis;
  }
  const double s = axis.norm();
  if (s == 0.0) return So3Point();
  const double theta = 2.0 * std::atan2(s, w);
  return So3Point((theta / s) * axis);
}

Su2Element point_to_su2(const So3Point& p) {
  const double theta = p.angle();
  if (theta == 0.0) return Su2Element::identity();
  return rotation(p.v() / theta, theta);
}

double rotation_distance(const So3Point& p, const So3Point& q) {
  return relative_angle(point_to_su2(p), point_to_su2(q));
}

So3Path::So3Path(std::vector<So3Point> samples, bool closed)
    : samples_(std::move(samples)), closed_(closed) {
  if (samples_.empty()) throw std::invalid_argument("So3Path: no samples");
  if (closed_ && rotation_distance(samples_.front(), samples_.back()) > kSameRotation) {
    throw std::invalid_argument("So3Path: closed path must end where it starts");
  }
}

So3Path concatenate(const So3Path& first, const So3Path& second) {
  if (!first.closed() || !second.closed()) {
    throw std::invalid_argument("concatenate: both paths must be closed");
  }
  if (rotation_distance(first.samples().back(), second.samples().front()) > kSameRotation) {
    throw std::invalid_argument("concatenate: paths do not share a base point");
  }
  std::vector<So3Point> out = first.samples();
  out.insert(out.end(), second.samples().begin() + 1, second.samples().end());
  return So3Path(std::move(out), true);
}

So3Path repeat(const So3Path& path, int times) {
  if (times < 1) throw std::invalid_argument("repeat: times must be >= 1");
  So3Path out = path;
  for (int i = 1; i < times; ++i) out = concatenate(out, path);
  return out;
}

LiftResult lift_path(const So3Path& path) {
  const auto& samples = path.samples();
  LiftResult out;
  out.su2_samples.reserve(samples.size());
  out.su2_samples.push_back(point_to_su2(samples.front()));
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const Su2Element& prev = out.su2_samples.back();
    const Su2Element next = point_to_su2(samples[k]);
    if (relative_angle(prev, next) >= 0.5 * kPi) {
      throw AmbiguousLiftError("lift_path: samples " + std::to_string(k - 1) + " and " +
                               std::to_string(k) + " are pi/2 or more apart");
    }
    out.su2_samples.push_back(distance(prev, next) <= distance(prev, -next) ? next : -next);
  }
  out.jump_count = count_surface_jumps(samples);

  const Su2Element& last = out.su2_samples.back();
  const Su2Element reference =
      path.closed() ? out.su2_samples.front() : point_to_su2(samples.back());
  out.endpoint_sign = distance(last, reference) <= distance(last, -reference) ? 1 : -1;
  return out;
}

HomotopyClass classify(const So3Path& path) {
  if (!path.closed()) throw std::invalid_argument("classify: path is not closed");
  return lift_path(path).endpoint_sign == 1 ? HomotopyClass::trivial : HomotopyClass::nontrivial;
}

So3Path path_from_rotation_schedule(const std::vector<RotationLeg>& legs, int samples_per_leg) {
  if (legs.empty()) throw std::invalid_argument("path_from_rotation_schedule: no legs");
  if (samples_per_leg < 2) {
    throw std::invalid_argument("path_from_rotation_schedule: samples_per_leg must be >= 2");
  }
  std::vector<So3Point> samples{So3Point()};
  Su2Element running = Su2Element::identity();
  for (const RotationLeg& leg : legs) {
    for (int j = 1; j < samples_per_leg; ++j) {
      const double angle = leg.angle * j / (samples_per_leg - 1);
      samples.push_back(So3Point::from_su2(rotation(leg.axis, angle) * running));
    }
    running = rotation(leg.axis, leg.angle) * running;
  }
  const bool closed = vector_part(running).norm() <= kSameRotation;
  return So3Path(std::move(samples), closed);
}

}  // namespace spinorlab
