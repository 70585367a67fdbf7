// Copyright 2026 The PoseKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSEKIT_ROTATION_HPP_
#define POSEKIT_ROTATION_HPP_

#include <array>
#include <span>

#include <Eigen/Dense>

namespace posekit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Tolerance on |m^T m - I| (per entry) and |det m - 1| for a valid rotation.
inline constexpr double kRotationTolerance = 1e-9;

// Largest deviation of `m` from a proper rotation: the max of the per-entry
// error of m^T m against I and |det(m) - 1|.
double orthonormality_error(const Mat3& m);

// Proper rotation in SO(3). Construction from an arbitrary matrix is checked.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }

  // Throws kInvalidInput if `m` deviates from SO(3) by more than `tolerance`.
  static Rotation from_matrix(const Mat3& m,
                              double tolerance = kRotationTolerance);

  // Closest rotation to `m` in Frobenius norm (polar projection through the
  // SVD with the determinant sign fixed). Throws kDegenerate if `m` has
  // nonpositive determinant or is rank deficient.
  static Rotation nearest(const Mat3& m);

  // Rodrigues rotation of `angle` radians about `axis` (normalized here).
  static Rotation axis_angle(const Vec3& axis, double angle);

  // Unit quaternion (w, x, y, z); normalized here.
  static Rotation from_quaternion(double w, double x, double y, double z);

  // Nine numbers, row-major.
  static Rotation from_row_major(std::span<const double, 9> values,
                                 double tolerance = kRotationTolerance);
  std::array<double, 9> row_major() const;

  const Mat3& matrix() const { return m_; }
  Rotation inverse() const { return Rotation(m_.transpose()); }

  Rotation operator*(const Rotation& other) const {
    return Rotation(m_ * other.m_);
  }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}

  Mat3 m_;
};

// Geodesic (relative) angle between two rotations in [0, pi], evaluated with
// atan2 on the log-map components so it stays accurate near 0 and pi.
double geodesic_angle(const Rotation& a, const Rotation& b);

// Skew-symmetric cross-product matrix [v]_x.
Mat3 skew(const Vec3& v);

}  // namespace posekit

#endif  // POSEKIT_ROTATION_HPP_
