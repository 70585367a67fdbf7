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

#ifndef POSEKIT_ALIGN_HPP_
#define POSEKIT_ALIGN_HPP_

#include <span>

#include "posekit/mesh.hpp"
#include "posekit/rotation.hpp"

namespace posekit {

// Both point sets handed to procrustes_align must have their mean within this
// distance of the origin.
inline constexpr double kCenteringTolerance = 1e-6;

// Proper rotation R minimizing sum_i |reconstructed_i - R canonical_i|^2.
//
// Points correspond by index. Both sets must already be centered; the
// alignment has no translation term, so an off-center input is rejected
// rather than silently shifted. The solution comes from the SVD of the 3x3
// cross-covariance H = sum_i canonical_i reconstructed_i^T = U S V^T as
//   R = V diag(1, 1, sign(det(V U^T))) U^T,
// where the last diagonal entry keeps det(R) = +1 for reflected inputs.
//
// Throws kInvalidInput on a size mismatch, fewer than 3 points or uncentered
// inputs, and kDegenerate when H has rank < 2 (collinear points).
Rotation procrustes_align(std::span<const Vec3> reconstructed,
                          std::span<const Vec3> canonical);
Rotation procrustes_align(const Mesh& reconstructed, const Mesh& canonical);

// Root-mean-square of |reconstructed_i - R canonical_i|.
double procrustes_residual(std::span<const Vec3> reconstructed,
                           std::span<const Vec3> canonical, const Rotation& r);

// arcsin(|estimated - groundtruth|_F / (2 sqrt 2)), argument clamped to
// [0, 1]. Equals half the geodesic angle between the two rotations, so the
// result lies in [0, pi/2].
double pose_loss(const Rotation& estimated, const Rotation& groundtruth);

// Minimum of pose_loss(estimated, groundtruth * S_j) over the symmetry
// rotations S_j of `symmetry`.
double symmetry_aware_pose_loss(const Rotation& estimated,
                                const Rotation& groundtruth,
                                const SymmetrySpec& symmetry);

}  // namespace posekit

#endif  // POSEKIT_ALIGN_HPP_
