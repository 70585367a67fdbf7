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

#ifndef POSEKIT_SIM_HPP_
#define POSEKIT_SIM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "posekit/mesh.hpp"

namespace posekit {

enum class NoiseKind {
  kGaussian,  // independent N(0, scale^2 I) per vertex
  kSmooth,    // gaussian field averaged once over each closed 1-ring
  kDropout,   // each vertex, with probability kOutlierFraction, gets an
              // N(0, scale^2 I) offset
};

inline constexpr double kOutlierFraction = 0.1;

std::string_view to_string(NoiseKind kind);
// Accepts "gaussian-per-vertex", "low-frequency-smooth", "dropout-outlier".
NoiseKind parse_noise_kind(std::string_view name);

struct NoiseModel {
  NoiseKind kind = NoiseKind::kGaussian;
  double scale = 0.0;  // meters
  std::uint64_t seed = 0;

  void validate() const;
};

// Stand-in for a network-reconstructed, pose-conditioned mesh: the canonical
// vertices rotated by `allocentric` and perturbed by `noise`. Same seed, same
// output.
Mesh simulate_reconstruction(const Mesh& canonical, const Rotation& allocentric,
                             const NoiseModel& noise);

// (x - mean) / stddev with the population stddev. Throws kInvalidInput for
// fewer than 2 values or zero variance.
std::vector<double> standardize(std::span<const double> values);

// Spearman rank correlation with average ranks for ties; nullopt when either
// side has no rank variance.
std::optional<double> spearman_correlation(std::span<const double> x,
                                           std::span<const double> y);

struct StudyBin {
  double lower = 0.0;  // standardized error range [lower, upper)
  double upper = 0.0;  // the last bin includes its upper edge
  double mean_pose_loss = 0.0;
  std::size_t count = 0;
};

struct StudySample {
  std::size_t level = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double noise_scale = 0.0;
  double vertex_loss = 0.0;
  double standardized_vertex_loss = 0.0;
  double pose_loss = 0.0;
  double residual = 0.0;
  double standardized_residual = 0.0;
};

struct StudyConfig {
  std::vector<NoiseModel> sweep;
  std::size_t trials = 300;  // per noise level
  std::size_t bins = 10;
  // Each trial draws its noise scale as level scale * exp(U(-spread, spread)),
  // emulating per-sample variation in reconstruction quality.
  double scale_spread = 0.7;

  void validate() const;
};

struct CorrelationStudy {
  StudyConfig config;
  // Binned by standardized vertex loss (needs groundtruth).
  std::vector<StudyBin> bins;
  std::optional<double> rank_correlation;
  // Binned by standardized alignment residual (groundtruth-free).
  std::vector<StudyBin> residual_bins;
  std::optional<double> residual_rank_correlation;
  std::vector<StudySample> samples;  // ordered by (level, trial)
};

// Three gaussian levels at {0.005, 0.02, 0.08} x mesh diameter with seeds
// derived from `seed`.
std::vector<NoiseModel> default_noise_sweep(const Mesh& canonical,
                                            std::uint64_t seed);

// For every level and trial: draw a uniform random rotation, simulate a
// reconstruction, recover the rotation by Procrustes alignment against the
// (centered) canonical mesh and record vertex loss, pose loss and alignment
// residual. Vertex losses and residuals are standardized over the whole study,
// split into equal-count bins and rank-correlated with the pose loss. When the
// vertex losses have no variance (noise-free sweep) the correlation is
// nullopt and all samples share one bin.
CorrelationStudy correlation_study(const Mesh& canonical,
                                   const StudyConfig& config);

// Number of adjacent bin pairs whose mean pose loss does not decrease.
std::size_t count_monotone_pairs(std::span<const StudyBin> bins);

}  // namespace posekit

#endif  // POSEKIT_SIM_HPP_
