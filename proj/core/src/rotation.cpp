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

#include "posekit/rotation.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "posekit/error.hpp"

namespace posekit {

double orthonormality_error(const Mat3& m) {
  const Mat3 gram = m.transpose() * m - Mat3::Identity();
  return std::max(gram.cwiseAbs().maxCoeff(), std::abs(m.determinant() - 1.0));
}

Rotation Rotation::from_matrix(const Mat3& m, double tolerance) {
  if (!m.allFinite()) throw_invalid("rotation has non-finite entries");
  const double err = orthonormality_error(m);
  if (err > tolerance) {
    std::ostringstream os;
    os << "matrix is not a proper rotation (deviation " << err
       << " exceeds " << tolerance << ")";
    throw_invalid(os.str());
  }
  return Rotation(m);
}

Rotation Rotation::nearest(const Mat3& m) {
  if (!m.allFinite()) throw_invalid("rotation has non-finite entries");
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 s = svd.singularValues();
  if (s(1) <= 1e-12 * std::max(s(0), 1e-300)) {
    throw_degenerate("cannot project a rank-deficient matrix onto SO(3)");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  Vec3 d(1.0, 1.0, (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0);
  return Rotation(u * d.asDiagonal() * v.transpose());
}

Rotation Rotation::axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw_invalid("rotation axis is zero");
  return Rotation(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  Eigen::Quaterniond q(w, x, y, z);
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw_invalid("quaternion is zero");
  q.coeffs() /= n;
  return Rotation(q.toRotationMatrix());
}

Rotation Rotation::from_row_major(std::span<const double, 9> values,
                                  double tolerance) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = values[3 * r + c];
  return from_matrix(m, tolerance);
}

std::array<double, 9> Rotation::row_major() const {
  std::array<double, 9> out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[3 * r + c] = m_(r, c);
  return out;
}

double geodesic_angle(const Rotation& a, const Rotation& b) {
  const Mat3 rel = a.matrix().transpose() * b.matrix();
  const Vec3 w(rel(2, 1) - rel(1, 2), rel(0, 2) - rel(2, 0),
               rel(1, 0) - rel(0, 1));
  return std::atan2(0.5 * w.norm(), 0.5 * (rel.trace() - 1.0));
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

}  // namespace posekit
