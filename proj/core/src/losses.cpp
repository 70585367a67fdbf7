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

#include "posekit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "posekit/error.hpp"

namespace posekit {
namespace {

void check_topology(const Mesh& predicted, const Mesh& groundtruth) {
  if (!predicted.same_topology(groundtruth)) {
    throw_invalid("predicted and groundtruth meshes differ in topology");
  }
}

template <class Grid>
void check_shape(const Grid& a, const Grid& b) {
  if (!a.same_shape(b)) throw_invalid("dimension mismatch between maps");
}

}  // namespace

void LossWeights::validate() const {
  for (double w : {lambda_m, lambda_c, lambda_v, lambda_e, lambda_l, lambda_s,
                   lambda_g, lambda_p}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw_invalid("loss weights must be finite and nonnegative");
    }
  }
}

double vertex_loss(const Mesh& predicted, const Mesh& groundtruth) {
  check_topology(predicted, groundtruth);
  const auto p = predicted.vertices();
  const auto g = groundtruth.vertices();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += (p[i] - g[i]).squaredNorm();
  return sum;
}

double edge_loss(const Mesh& predicted, const Mesh& groundtruth) {
  check_topology(predicted, groundtruth);
  const auto p = predicted.vertices();
  const auto g = groundtruth.vertices();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (VertexIndex k : predicted.neighbors(static_cast<VertexIndex>(i))) {
      const double diff =
          (p[i] - p[k]).squaredNorm() - (g[i] - g[k]).squaredNorm();
      sum += diff * diff;
    }
  }
  return sum;
}

double laplacian_loss(const Mesh& predicted, const Mesh& groundtruth) {
  check_topology(predicted, groundtruth);
  const auto p = predicted.vertices();
  const auto g = groundtruth.vertices();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto nbrs = predicted.neighbors(static_cast<VertexIndex>(i));
    Vec3 mean = Vec3::Zero();
    for (VertexIndex k : nbrs) mean += p[k] - g[k];
    if (!nbrs.empty()) mean /= static_cast<double>(nbrs.size());
    sum += ((p[i] - g[i]) - mean).squaredNorm();
  }
  return sum;
}

double mesh_loss(const Mesh& predicted, const Mesh& groundtruth,
                 const LossWeights& weights, const SymmetrySpec& symmetry) {
  weights.validate();
  check_topology(predicted, groundtruth);
  double best = std::numeric_limits<double>::infinity();
  for (const Rotation& s : symmetry_rotations(symmetry)) {
    const Mesh gt = rotate_mesh(groundtruth, s);
    const double value = weights.lambda_v * vertex_loss(predicted, gt) +
                         weights.lambda_e * edge_loss(predicted, gt) +
                         weights.lambda_l * laplacian_loss(predicted, gt);
    best = std::min(best, value);
  }
  return best;
}

double mask_loss(const Mask2D& predicted, const Mask2D& groundtruth) {
  check_shape(predicted, groundtruth);
  const auto p = predicted.values();
  const auto y = groundtruth.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], kMaskEpsilon, 1.0 - kMaskEpsilon);
    sum -= y[i] * std::log(q) + (1.0 - y[i]) * std::log(1.0 - q);
  }
  return sum / static_cast<double>(p.size());
}

double centroid_loss(const Heatmap2D& predicted, const Heatmap2D& groundtruth) {
  check_shape(predicted, groundtruth);
  const auto p = predicted.values();
  const auto g = groundtruth.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - g[i];
    sum += d * d;
  }
  return sum;
}

double multiscale_loss(std::span<const ScaleOutputs> scales,
                       const LossWeights& weights) {
  weights.validate();
  if (scales.empty()) throw_invalid("multi-scale loss needs at least one scale");
  double sum = 0.0;
  double divisor = 1.0;
  for (const ScaleOutputs& s : scales) {
    const double term =
        weights.lambda_m * mask_loss(s.predicted_mask, s.groundtruth_mask) +
        weights.lambda_c *
            centroid_loss(s.predicted_heatmap, s.groundtruth_heatmap);
    sum += term / divisor;
    divisor *= 2.0;
  }
  return sum;
}

double total_loss(const ComponentLosses& losses, const LossWeights& weights) {
  weights.validate();
  return weights.lambda_s * losses.localization +
         weights.lambda_g * losses.mesh + weights.lambda_p * losses.rotation;
}

}  // namespace posekit
