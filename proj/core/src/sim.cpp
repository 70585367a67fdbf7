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

#include "posekit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "posekit/align.hpp"
#include "posekit/error.hpp"
#include "posekit/losses.hpp"
#include "posekit/random.hpp"

namespace posekit {
namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

// Equal-count bins over `keys`, each carrying the mean of `values`.
std::vector<StudyBin> quantile_bins(std::span<const double> keys,
                                    std::span<const double> values,
                                    std::size_t bin_count) {
  const std::size_t n = keys.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return keys[a] < keys[b];
  });
  bin_count = std::min(bin_count, n);
  std::vector<StudyBin> bins(bin_count);
  for (std::size_t b = 0; b < bin_count; ++b) {
    const std::size_t lo = b * n / bin_count;
    const std::size_t hi = (b + 1) * n / bin_count;
    StudyBin& bin = bins[b];
    bin.count = hi - lo;
    bin.lower = keys[order[lo]];
    bin.upper = hi < n ? keys[order[hi]] : keys[order[n - 1]];
    double sum = 0.0;
    for (std::size_t k = lo; k < hi; ++k) sum += values[order[k]];
    bin.mean_pose_loss = sum / static_cast<double>(bin.count);
  }
  return bins;
}

bool has_variance(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi > *lo;
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kGaussian:
      return "gaussian-per-vertex";
    case NoiseKind::kSmooth:
      return "low-frequency-smooth";
    case NoiseKind::kDropout:
      return "dropout-outlier";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "gaussian-per-vertex" || name == "gaussian") {
    return NoiseKind::kGaussian;
  }
  if (name == "low-frequency-smooth" || name == "smooth") {
    return NoiseKind::kSmooth;
  }
  if (name == "dropout-outlier" || name == "dropout") return NoiseKind::kDropout;
  throw_invalid("unknown noise kind '" + std::string(name) + "'");
}

void NoiseModel::validate() const {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw_invalid("noise scale must be finite and nonnegative");
  }
}

Mesh simulate_reconstruction(const Mesh& canonical, const Rotation& allocentric,
                             const NoiseModel& noise) {
  noise.validate();
  Mesh rotated = rotate_mesh(canonical, allocentric);
  if (noise.scale == 0.0) return rotated;

  Rng rng(noise.seed);
  const auto base = rotated.vertices();
  const std::size_t n = base.size();
  std::vector<Vec3> offsets(n, Vec3::Zero());
  switch (noise.kind) {
    case NoiseKind::kGaussian:
      for (Vec3& o : offsets) o = noise.scale * rng.normal3();
      break;
    case NoiseKind::kSmooth: {
      std::vector<Vec3> raw(n);
      for (Vec3& o : raw) o = noise.scale * rng.normal3();
      for (std::size_t i = 0; i < n; ++i) {
        const auto nbrs = rotated.neighbors(static_cast<VertexIndex>(i));
        Vec3 sum = raw[i];
        for (VertexIndex k : nbrs) sum += raw[k];
        offsets[i] = sum / static_cast<double>(nbrs.size() + 1);
      }
      break;
    }
    case NoiseKind::kDropout:
      for (Vec3& o : offsets) {
        const bool outlier = rng.uniform() < kOutlierFraction;
        const Vec3 draw = noise.scale * rng.normal3();
        if (outlier) o = draw;
      }
      break;
  }
  std::vector<Vec3> out(base.begin(), base.end());
  for (std::size_t i = 0; i < n; ++i) out[i] += offsets[i];
  return rotated.with_vertices(std::move(out));
}

std::vector<double> standardize(std::span<const double> values) {
  if (values.size() < 2) throw_invalid("standardize needs at least 2 values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double var = 0.0;
  double peak = 0.0;
  for (double v : values) {
    var += (v - mean) * (v - mean);
    peak = std::max(peak, std::abs(v));
  }
  const double sd = std::sqrt(var / n);
  if (!has_variance(values) || !(sd > 1e-14 * peak)) {
    throw_invalid("standardize: values have zero variance");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = (values[i] - mean) / sd;
  }
  return out;
}

std::optional<double> spearman_correlation(std::span<const double> x,
                                           std::span<const double> y) {
  if (x.size() != y.size()) throw_invalid("correlation of unequal lengths");
  if (x.size() < 2 || !has_variance(x) || !has_variance(y)) return std::nullopt;
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mean = 0.5 * static_cast<double>(x.size() + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  return sxy / std::sqrt(sxx * syy);
}

void StudyConfig::validate() const {
  if (sweep.empty()) throw_invalid("noise sweep is empty");
  for (const NoiseModel& m : sweep) m.validate();
  if (trials < 100) throw_invalid("study needs at least 100 trials per level");
  if (bins < 1) throw_invalid("study needs at least 1 bin");
  if (bins > trials * sweep.size()) throw_invalid("more bins than trials");
  if (!(scale_spread >= 0.0) || !std::isfinite(scale_spread)) {
    throw_invalid("scale spread must be finite and nonnegative");
  }
}

std::vector<NoiseModel> default_noise_sweep(const Mesh& canonical,
                                            std::uint64_t seed) {
  const double diameter = mesh_diameter(canonical);
  std::vector<NoiseModel> sweep;
  std::uint64_t level = 0;
  for (double fraction : {0.005, 0.02, 0.08}) {
    sweep.push_back({NoiseKind::kGaussian, fraction * diameter,
                     mix_seed(seed, level++)});
  }
  return sweep;
}

CorrelationStudy correlation_study(const Mesh& canonical_input,
                                   const StudyConfig& config) {
  config.validate();
  if (canonical_input.vertex_count() < 4) {
    throw_invalid("canonical mesh needs at least 4 vertices");
  }
  const Mesh canonical = center_mesh(canonical_input);

  CorrelationStudy study;
  study.config = config;
  study.samples.reserve(config.trials * config.sweep.size());
  for (std::size_t level = 0; level < config.sweep.size(); ++level) {
    const NoiseModel& base = config.sweep[level];
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      StudySample s;
      s.level = level;
      s.trial = trial;
      s.seed = mix_seed(base.seed, trial);
      Rng rng(s.seed);
      const Rotation truth = rng.rotation();
      const double factor =
          std::exp(rng.uniform(-config.scale_spread, config.scale_spread));
      s.noise_scale = base.scale * factor;
      const NoiseModel noise{base.kind, s.noise_scale, mix_seed(s.seed, 1)};

      const Mesh reconstructed =
          simulate_reconstruction(canonical, truth, noise);
      s.vertex_loss =
          vertex_loss(reconstructed, rotate_mesh(canonical, truth));
      const Mesh centered = center_mesh(reconstructed);
      const Rotation estimate = procrustes_align(centered, canonical);
      s.pose_loss = pose_loss(estimate, truth);
      s.residual = procrustes_residual(centered.vertices(),
                                       canonical.vertices(), estimate);
      study.samples.push_back(s);
    }
  }

  const std::size_t n = study.samples.size();
  std::vector<double> lv(n), la(n), res(n);
  for (std::size_t i = 0; i < n; ++i) {
    lv[i] = study.samples[i].vertex_loss;
    la[i] = study.samples[i].pose_loss;
    res[i] = study.samples[i].residual;
  }

  auto bin_by = [&](const std::vector<double>& raw, auto member,
                    std::vector<StudyBin>& bins,
                    std::optional<double>& correlation) {
    if (!has_variance(raw)) {
      StudyBin all;
      all.count = n;
      all.mean_pose_loss = std::accumulate(la.begin(), la.end(), 0.0) / n;
      bins = {all};
      correlation = std::nullopt;
      return;
    }
    const std::vector<double> z = standardize(raw);
    for (std::size_t i = 0; i < n; ++i) study.samples[i].*member = z[i];
    bins = quantile_bins(z, la, config.bins);
    correlation = spearman_correlation(raw, la);
  };
  bin_by(lv, &StudySample::standardized_vertex_loss, study.bins,
         study.rank_correlation);
  bin_by(res, &StudySample::standardized_residual, study.residual_bins,
         study.residual_rank_correlation);
  return study;
}

std::size_t count_monotone_pairs(std::span<const StudyBin> bins) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
    if (bins[i + 1].mean_pose_loss >= bins[i].mean_pose_loss) ++count;
  }
  return count;
}

}  // namespace posekit
