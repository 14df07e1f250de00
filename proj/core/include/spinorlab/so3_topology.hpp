#pragma once

// Closed paths in the radius-pi rotation ball, their continuous lift to SU(2)
// and the resulting homotopy class.

#include <vector>

#include "spinorlab/su2.hpp"

namespace spinorlab {

/// Rotation in axis-angle form v = angle * axis with |v| <= pi. Points on the
/// surface (|v| = pi) are stored with the first nonzero axis coordinate positive.
class So3Point {
 public:
  So3Point() = default;
  explicit So3Point(const Vec3& v);

  const Vec3& v() const { return v_; }
  double angle() const { return v_.norm(); }
  bool on_surface() const { return surface_; }

  /// Rodrigues formula.
  Eigen::Matrix3d rotation_matrix() const;

  /// Ball point of the rotation represented by +/-u.
  static So3Point from_su2(const Su2Element& u);

 private:
  Vec3 v_ = Vec3::Zero();
  bool surface_ = false;
};

/// cos(theta/2) I - i sin(theta/2) n.sigma with theta = |v|, n = v/|v|.
Su2Element point_to_su2(const So3Point& p);

/// Rotation angle in [0, pi] of R(p)^T R(q).
double rotation_distance(const So3Point& p, const So3Point& q);

class So3Path {
 public:
  /// Throws std::invalid_argument when `closed` is set but the end points are
  /// different rotations.
  So3Path(std::vector<So3Point> samples, bool closed);

  const std::vector<So3Point>& samples() const { return samples_; }
  bool closed() const { return closed_; }

  /// Traverses `first` and then `second`; both must be closed and share the base point.
  friend So3Path concatenate(const So3Path& first, const So3Path& second);

 private:
  std::vector<So3Point> samples_;
  bool closed_;
};

So3Path concatenate(const So3Path& first, const So3Path& second);

/// The path traversed `times` times in a row.
So3Path repeat(const So3Path& path, int times);

struct LiftResult {
  std::vector<Su2Element> su2_samples;
  int endpoint_sign = 1;
  int jump_count = 0;
};

enum class HomotopyClass { trivial, nontrivial };

/// Continuous lift by nearest-sign choice. jump_count counts the places where
/// the ball trajectory leaves through the surface and re-enters antipodally;
/// touching the surface and turning back is not a jump. Throws
/// AmbiguousLiftError when two consecutive samples are pi/2 or more apart.
LiftResult lift_path(const So3Path& path);

/// Throws std::invalid_argument for open paths.
HomotopyClass classify(const So3Path& path);

struct RotationLeg {
  Vec3 axis;
  double angle;
};

/// Samples the running product R_k ... R_1 while each leg rotates uniformly
/// from 0 to its angle. The path is closed when the net rotation is the identity.
So3Path path_from_rotation_schedule(const std::vector<RotationLeg>& legs, int samples_per_leg);

}  // namespace spinorlab
