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

#include "posekit/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "posekit/error.hpp"

namespace posekit {
namespace {

void check_centered(std::span<const Vec3> points, const char* name) {
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  if (!mean.allFinite() || mean.norm() > kCenteringTolerance) {
    throw_invalid(std::string(name) + " points are not centered (mean offset " +
                  std::to_string(mean.norm()) + ")");
  }
}

}  // namespace

Rotation procrustes_align(std::span<const Vec3> reconstructed,
                          std::span<const Vec3> canonical) {
  if (reconstructed.size() != canonical.size()) {
    throw_invalid("point count mismatch: " +
                  std::to_string(reconstructed.size()) + " reconstructed vs " +
                  std::to_string(canonical.size()) + " canonical");
  }
  if (canonical.size() < 3) throw_invalid("alignment needs at least 3 points");
  check_centered(reconstructed, "reconstructed");
  check_centered(canonical, "canonical");

  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    h.noalias() += canonical[i] * reconstructed[i].transpose();
  }
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 s = svd.singularValues();
  if (!(s(0) > 0.0) || s(1) <= 1e-10 * s(0)) {
    throw_degenerate(
        "degenerate configuration: cross-covariance has rank < 2 "
        "(points are collinear or coincident)");
  }
  const Mat3& u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  const double sign = (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  const Mat3 r = v * Vec3(1.0, 1.0, sign).asDiagonal() * u.transpose();
  // The product of orthogonal factors is a rotation to rounding; the loose
  // tolerance only guards against a broken SVD.
  return Rotation::from_matrix(r, 1e-6);
}

Rotation procrustes_align(const Mesh& reconstructed, const Mesh& canonical) {
  return procrustes_align(reconstructed.vertices(), canonical.vertices());
}

double procrustes_residual(std::span<const Vec3> reconstructed,
                           std::span<const Vec3> canonical,
                           const Rotation& r) {
  if (reconstructed.size() != canonical.size()) {
    throw_invalid("point count mismatch: " +
                  std::to_string(reconstructed.size()) + " reconstructed vs " +
                  std::to_string(canonical.size()) + " canonical");
  }
  if (canonical.empty()) throw_invalid("residual of an empty point set");
  double sum = 0.0;
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    sum += (reconstructed[i] - r * canonical[i]).squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(canonical.size()));
}

double pose_loss(const Rotation& estimated, const Rotation& groundtruth) {
  const double frob = (estimated.matrix() - groundtruth.matrix()).norm();
  const double arg = std::clamp(frob / (2.0 * std::numbers::sqrt2), 0.0, 1.0);
  return std::asin(arg);
}

double symmetry_aware_pose_loss(const Rotation& estimated,
                                const Rotation& groundtruth,
                                const SymmetrySpec& symmetry) {
  double best = std::numeric_limits<double>::infinity();
  for (const Rotation& s : symmetry_rotations(symmetry)) {
    best = std::min(best, pose_loss(estimated, groundtruth * s));
  }
  return best;
}

}  // namespace posekit
