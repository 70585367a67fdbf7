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

#include "posekit/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "posekit/error.hpp"

namespace posekit {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw_invalid("focal lengths must be positive");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw_invalid("principal point must be finite");
  }
  if (width < 1 || height < 1) throw_invalid("image dimensions must be >= 1");
}

Heatmap2D make_centroid_heatmap(const Vec2& center, int width, int height,
                                double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw_invalid("heatmap sigma must be positive");
  }
  if (width < 1 || height < 1) throw_invalid("heatmap dimensions must be >= 1");
  if (!center.allFinite()) throw_invalid("heatmap center must be finite");
  Heatmap2D h(width, height);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int y = 0; y < height; ++y) {
    const double dy = y - center.y();
    for (int x = 0; x < width; ++x) {
      const double dx = x - center.x();
      h.set(x, y, std::exp(-(dx * dx + dy * dy) * inv));
    }
  }
  return h;
}

Vec2 decode_heatmap(const Heatmap2D& heatmap) {
  int best_x = -1;
  int best_y = -1;
  double best = 0.0;
  for (int y = 0; y < heatmap.height(); ++y) {
    for (int x = 0; x < heatmap.width(); ++x) {
      if (heatmap.at(x, y) > best) {
        best = heatmap.at(x, y);
        best_x = x;
        best_y = y;
      }
    }
  }
  if (best_x < 0) throw_invalid("heatmap has no positive value");

  const int x0 = std::max(0, best_x - kDecodeRadius);
  const int x1 = std::min(heatmap.width() - 1, best_x + kDecodeRadius);
  const int y0 = std::max(0, best_y - kDecodeRadius);
  const int y1 = std::min(heatmap.height() - 1, best_y + kDecodeRadius);
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double w = std::max(heatmap.at(x, y), 0.0);
      sw += w;
      sx += w * (x - best_x);
      sy += w * (y - best_y);
    }
  }
  return {best_x + sx / sw, best_y + sy / sw};
}

Vec2 project_point(const CameraIntrinsics& k, const Vec3& p) {
  if (!(p.z() > 0.0)) {
    throw_invalid("point is behind the camera (z = " + std::to_string(p.z()) +
                  ")");
  }
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy};
}

Vec3 ray_from_pixel(const CameraIntrinsics& k, const Vec2& pixel) {
  return Vec3((pixel.x() - k.cx) / k.fx, (pixel.y() - k.cy) / k.fy, 1.0)
      .normalized();
}

Rotation rotation_to_ray(const Vec3& ray) {
  if (!ray.allFinite() || std::abs(ray.norm() - 1.0) > 1e-9) {
    throw_invalid("ray must be a unit vector");
  }
  const Vec3 a = Vec3::UnitZ();
  const double c = a.dot(ray);
  if (c <= -1.0 + 1e-9) {
    throw_degenerate("ray is anti-parallel to the camera principal axis");
  }
  const Mat3 vx = skew(a.cross(ray));
  const Mat3 r = Mat3::Identity() + vx + vx * vx / (1.0 + c);
  // Near-antiparallel rays amplify rounding through 1 / (1 + c).
  return Rotation::from_matrix(r, 1e-6);
}

double mask_bbox_diagonal(const Mask2D& mask, double threshold) {
  int x0 = std::numeric_limits<int>::max(), y0 = x0;
  int x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y) >= threshold) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) throw_invalid("mask has no pixel at or above the threshold");
  return std::hypot(static_cast<double>(x1 - x0 + 1),
                    static_cast<double>(y1 - y0 + 1));
}

double projected_bbox_diagonal(const CameraIntrinsics& k, const Mesh& mesh,
                               const Pose6D& pose) {
  if (mesh.vertex_count() < 2) {
    throw_degenerate("projected box of fewer than 2 vertices");
  }
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (const Vec3& v : mesh.vertices()) {
    const Vec2 q = project_point(k, pose.apply(v));
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const double diag = (hi - lo).norm();
  if (!(diag > 0.0)) throw_degenerate("projected box has zero extent");
  return diag;
}

double projected_bbox_diagonal(const CameraIntrinsics& k, const Mesh& mesh,
                               const Rotation& rotation, double distance) {
  if (!(distance > 0.0)) throw_invalid("render distance must be positive");
  return projected_bbox_diagonal(k, mesh,
                                 Pose6D{rotation, Vec3(0.0, 0.0, distance)});
}

double estimate_distance(double reference_diagonal, double reference_distance,
                         double observed_diagonal) {
  if (!(reference_diagonal > 0.0) || !(reference_distance > 0.0) ||
      !(observed_diagonal > 0.0)) {
    throw_invalid("distance estimation needs positive inputs");
  }
  return reference_diagonal * reference_distance / observed_diagonal;
}

double default_reference_distance(const CameraIntrinsics& k, const Mesh& mesh) {
  k.validate();
  const double half_fov =
      std::min(std::atan(0.5 * k.width / k.fx), std::atan(0.5 * k.height / k.fy));
  return 2.5 * mesh_diameter(mesh) / std::tan(half_fov);
}

LiftResult lift_pose(const Rotation& allocentric, const Vec2& centroid,
                     double observed_diagonal, const CameraIntrinsics& k,
                     const Mesh& mesh, const LiftOptions& options) {
  k.validate();
  if (!(observed_diagonal > 0.0)) {
    throw_invalid("observed diagonal must be positive");
  }
  if (options.refine_iterations < 0) {
    throw_invalid("refine_iterations must be >= 0");
  }
  LiftResult out;
  out.ray = ray_from_pixel(k, centroid);
  out.ray_rotation = rotation_to_ray(out.ray);

  const Rotation& rc = out.ray_rotation;
  auto render = [&](double d) {
    if (!(d > 0.0)) throw_invalid("render distance must be positive");
    const Vec3 offset(0.0, 0.0, d);
    if (options.frame == ReferenceFrame::kViewingRay) {
      return projected_bbox_diagonal(k, mesh, Pose6D{rc * allocentric, rc * offset});
    }
    return projected_bbox_diagonal(k, mesh, Pose6D{allocentric, offset});
  };

  double d = options.reference_distance.value_or(
      default_reference_distance(k, mesh));
  double l = render(d);
  double d_hat = estimate_distance(l, d, observed_diagonal);
  for (int it = 0; it < options.refine_iterations; ++it) {
    if (std::abs(d_hat - d) <= 1e-14 * d) break;
    d = d_hat;
    l = render(d);
    d_hat = estimate_distance(l, d, observed_diagonal);
    out.iterations = it + 1;
  }

  out.reference_distance = d;
  out.reference_diagonal = l;
  out.distance = d_hat;
  out.pose.rotation = rc * allocentric;
  out.pose.translation = rc * Vec3(0.0, 0.0, d_hat);
  return out;
}

}  // namespace posekit
