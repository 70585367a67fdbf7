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

#ifndef POSEKIT_LOSSES_HPP_
#define POSEKIT_LOSSES_HPP_

#include <span>

#include "posekit/image.hpp"
#include "posekit/mesh.hpp"

namespace posekit {

// Loss weights. All must be nonnegative.
struct LossWeights {
  // Localization terms of the multi-scale loss.
  double lambda_m = 1.0;
  double lambda_c = 1.0;
  // Mesh reconstruction terms.
  double lambda_v = 1.0;
  double lambda_e = 1.0;
  double lambda_l = 1.0;
  // Final combination of localization, mesh and rotation losses.
  double lambda_s = 1.0;
  double lambda_g = 1.0;
  double lambda_p = 5.0;

  void validate() const;
};

// Lower clamp for predicted mask probabilities; the upper clamp is 1 - eps.
inline constexpr double kMaskEpsilon = 1e-7;

// Mesh losses. `predicted` and `groundtruth` must share topology; a mismatch
// throws kInvalidInput.

// Sum of squared vertex displacements (not a mean).
double vertex_loss(const Mesh& predicted, const Mesh& groundtruth);

// Sum over directed neighbor pairs (each undirected edge twice) of the squared
// difference of squared edge lengths.
double edge_loss(const Mesh& predicted, const Mesh& groundtruth);

// Sum of squared differences between each vertex displacement and the mean
// displacement of its neighbors. Isolated vertices contribute their squared
// displacement.
double laplacian_loss(const Mesh& predicted, const Mesh& groundtruth);

// Weighted mesh loss minimized over the symmetry-rotated copies S_j of the
// groundtruth:
//   min_j  lambda_v L_v(p, S_j gt) + lambda_e L_e(p, S_j gt)
//        + lambda_l L_l(p, S_j gt).
double mesh_loss(const Mesh& predicted, const Mesh& groundtruth,
                 const LossWeights& weights, const SymmetrySpec& symmetry);

// Mean binary cross entropy over pixels; predictions are clamped to
// [kMaskEpsilon, 1 - kMaskEpsilon].
double mask_loss(const Mask2D& predicted, const Mask2D& groundtruth);

// Sum of squared per-pixel differences (no mean).
double centroid_loss(const Heatmap2D& predicted, const Heatmap2D& groundtruth);

struct ScaleOutputs {
  Mask2D predicted_mask;
  Mask2D groundtruth_mask;
  Heatmap2D predicted_heatmap;
  Heatmap2D groundtruth_heatmap;
};

// sum_i (lambda_m L_m(i) + lambda_c L_c(i)) / 2^i, with scale 0 the highest
// resolution. Throws kInvalidInput on an empty list.
double multiscale_loss(std::span<const ScaleOutputs> scales,
                       const LossWeights& weights);

struct ComponentLosses {
  double localization = 0.0;  // multi-scale loss
  double mesh = 0.0;          // mesh reconstruction loss
  double rotation = 0.0;      // allocentric pose loss
};

// lambda_s * localization + lambda_g * mesh + lambda_p * rotation.
double total_loss(const ComponentLosses& losses, const LossWeights& weights);

}  // namespace posekit

#endif  // POSEKIT_LOSSES_HPP_
