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

#ifndef POSEKIT_LIFT_HPP_
#define POSEKIT_LIFT_HPP_

#include <optional>

#include "posekit/image.hpp"
#include "posekit/mesh.hpp"
#include "posekit/pose.hpp"

namespace posekit {

// Pinhole camera. Pixel coordinates follow Grid2D: pixel centers sit at
// integer coordinates.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;
};

// Centroid heatmap sigma used throughout.
inline constexpr double kCentroidSigma = 5.0;
// Half-width of the subpixel refinement window in decode_heatmap.
inline constexpr int kDecodeRadius = 5;

// Gaussian bump exp(-|p - center|^2 / (2 sigma^2)) sampled at pixel centers,
// peak amplitude 1 and unnormalized. The center may lie outside the image.
Heatmap2D make_centroid_heatmap(const Vec2& center, int width, int height,
                                double sigma = kCentroidSigma);

// Argmax pixel (first in row-major order on ties), refined by the mean of
// pixel coordinates weighted by the positive values inside an 11x11 window
// clipped to the image. Throws kInvalidInput if no value is positive.
Vec2 decode_heatmap(const Heatmap2D& heatmap);

// (fx x / z + cx, fy y / z + cy). Throws kInvalidInput for z <= 0.
Vec2 project_point(const CameraIntrinsics& k, const Vec3& p);

// Unit direction of K^-1 (u, v, 1).
Vec3 ray_from_pixel(const CameraIntrinsics& k, const Vec2& pixel);

// Rotation taking the principal axis a = (0, 0, 1) onto the unit ray r:
//   R_c = I + [v]_x + [v]_x^2 / (1 + a.r),  v = a x r.
// Throws kInvalidInput unless |r| = 1 within 1e-9 and kDegenerate when r is
// (nearly) anti-parallel to a.
Rotation rotation_to_ray(const Vec3& ray);

// Diagonal of the tight pixel-extent box over mask pixels >= threshold; a
// single pixel spans 1x1. Throws kInvalidInput on an empty selection.
double mask_bbox_diagonal(const Mask2D& mask, double threshold = 0.5);

// Diagonal of the 2D bounding box of the projected vertices of
// (rotation * mesh + (0, 0, distance)). Stands in for rendering the object.
// Throws kInvalidInput if a vertex lands at z <= 0 and kDegenerate if the
// box collapses (fewer than 2 vertices or zero extent).
double projected_bbox_diagonal(const CameraIntrinsics& k, const Mesh& mesh,
                               const Rotation& rotation, double distance);
// Same, for an arbitrary pose.
double projected_bbox_diagonal(const CameraIntrinsics& k, const Mesh& mesh,
                               const Pose6D& pose);

// Distance at which an object whose diagonal is `reference_diagonal` at
// `reference_distance` appears with `observed_diagonal`: l * d / l_hat.
double estimate_distance(double reference_diagonal, double reference_distance,
                         double observed_diagonal);

// 2.5 * diameter / tan(half field of view), using the narrower image axis.
double default_reference_distance(const CameraIntrinsics& k, const Mesh& mesh);

// Full-image position of a centroid detected inside a region of interest.
inline Vec2 roi_to_image(const Vec2& roi_centroid, const Vec2& roi_offset) {
  return roi_centroid + roi_offset;
}

// Where the reference rendering is placed.
enum class ReferenceFrame {
  // Along the estimated viewing ray: R_c (R_a v + (0, 0, d)). The rendering is
  // the exact appearance at distance d of an object with the same allocentric
  // pose, so the refined distance matches the observation.
  kViewingRay,
  // On the principal axis: R_a v + (0, 0, d). The distance estimate is then
  // independent of the centroid pixel, but off-axis perspective stretch
  // biases it.
  kPrincipalAxis,
};

struct LiftOptions {
  // Defaults to default_reference_distance().
  std::optional<double> reference_distance;
  // Fixed-point refinements d <- l(d) d / l_hat after the first estimate.
  // 0 keeps the single-shot estimate at the reference distance.
  int refine_iterations = 8;
  ReferenceFrame frame = ReferenceFrame::kViewingRay;
};

struct LiftResult {
  Pose6D pose;
  Vec3 ray = Vec3::UnitZ();
  Rotation ray_rotation;
  // Distance and diagonal of the final reference rendering.
  double reference_distance = 0.0;
  double reference_diagonal = 0.0;
  double distance = 0.0;
  int iterations = 0;
};

// Egocentric pose from an allocentric rotation, the full-image centroid pixel
// and the observed mask diagonal: R = R_c R_a and T = R_c (0, 0, d_hat).
LiftResult lift_pose(const Rotation& allocentric, const Vec2& centroid,
                     double observed_diagonal, const CameraIntrinsics& k,
                     const Mesh& mesh, const LiftOptions& options = {});

}  // namespace posekit

#endif  // POSEKIT_LIFT_HPP_
