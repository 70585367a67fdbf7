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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "posekit/align.hpp"
#include "posekit/error.hpp"
#include "posekit/losses.hpp"
#include "posekit/random.hpp"
#include "posekit/sim.hpp"
#include "test_util.hpp"

namespace posekit {
namespace {

Mesh blob() { return testing::ellipsoid(Vec3(0.05, 0.035, 0.025)); }

TEST(Rng, DeterministicAndUniformRotations) {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));

  // Haar measure on SO(3) has E[R] = 0 and trace distributed with mean 0.
  Rng rng(11);
  Mat3 mean = Mat3::Zero();
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Rotation r = rng.rotation();
    ASSERT_LT(orthonormality_error(r.matrix()), 1e-12);
    mean += r.matrix() / n;
  }
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 0.03);
}

TEST(Rng, NormalMoments) {
  Rng rng(3);
  double s = 0.0, s2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(NoiseKind, ParseAndPrint) {
  for (NoiseKind k : {NoiseKind::kGaussian, NoiseKind::kSmooth, NoiseKind::kDropout}) {
    EXPECT_EQ(parse_noise_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_noise_kind("gaussian-per-vertex"), NoiseKind::kGaussian);
  EXPECT_EQ(parse_noise_kind("low-frequency-smooth"), NoiseKind::kSmooth);
  EXPECT_EQ(parse_noise_kind("dropout-outlier"), NoiseKind::kDropout);
  EXPECT_THROW(parse_noise_kind("salt"), Error);
}

TEST(SimulateReconstruction, ZeroScaleIsExactRotation) {
  const Mesh m = blob();
  std::mt19937_64 rng(1);
  const Rotation r = testing::random_rotation(rng);
  for (NoiseKind k : {NoiseKind::kGaussian, NoiseKind::kSmooth, NoiseKind::kDropout}) {
    const Mesh out = simulate_reconstruction(m, r, {k, 0.0, 7});
    const Mesh rotated = rotate_mesh(m, r);
    EXPECT_TRUE(out.same_topology(m));
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      EXPECT_EQ(out.vertices()[i], rotated.vertices()[i]);
    }
  }
}

TEST(SimulateReconstruction, SameSeedSameOutput) {
  const Mesh m = blob();
  for (NoiseKind k : {NoiseKind::kGaussian, NoiseKind::kSmooth, NoiseKind::kDropout}) {
    const Mesh a = simulate_reconstruction(m, Rotation(), {k, 0.01, 99});
    const Mesh b = simulate_reconstruction(m, Rotation(), {k, 0.01, 99});
    const Mesh c = simulate_reconstruction(m, Rotation(), {k, 0.01, 100});
    bool differs = false;
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      EXPECT_EQ(a.vertices()[i], b.vertices()[i]);
      differs |= a.vertices()[i] != c.vertices()[i];
    }
    EXPECT_TRUE(differs);
  }
}

TEST(SimulateReconstruction, GaussianVertexLossExpectation) {
  const Mesh m(testing::random_cloud(1000, 4));
  const double sigma = 0.003;
  std::mt19937_64 rng(2);
  double total = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Rotation r = testing::random_rotation(rng);
    const Mesh out = simulate_reconstruction(
        m, r, {NoiseKind::kGaussian, sigma, static_cast<std::uint64_t>(t)});
    total += vertex_loss(out, rotate_mesh(m, r));
  }
  const double expected = 3.0 * 1000 * sigma * sigma;
  EXPECT_NEAR(total / 50, expected, 0.1 * expected);
}

TEST(SimulateReconstruction, SmoothAndDropoutShapes) {
  const Mesh m = blob();
  const Mesh rotated = rotate_mesh(m, Rotation());
  const Mesh drop = simulate_reconstruction(m, Rotation(), {NoiseKind::kDropout, 0.01, 3});
  std::size_t moved = 0;
  for (std::size_t i = 0; i < m.vertex_count(); ++i) {
    moved += drop.vertices()[i] != rotated.vertices()[i];
  }
  // Binomial(n, 0.1) with n = 266: mean 26.6, sd 4.9.
  EXPECT_GT(moved, 10u);
  EXPECT_LT(moved, 45u);

  // Averaging over 1-rings damps the per-vertex variance.
  const Mesh smooth = simulate_reconstruction(m, Rotation(), {NoiseKind::kSmooth, 0.01, 3});
  const Mesh rough = simulate_reconstruction(m, Rotation(), {NoiseKind::kGaussian, 0.01, 3});
  EXPECT_LT(vertex_loss(smooth, rotated), 0.5 * vertex_loss(rough, rotated));
  EXPECT_GT(vertex_loss(smooth, rotated), 0.0);
}

TEST(NoiseModel, Validation) {
  EXPECT_THROW((NoiseModel{NoiseKind::kGaussian, -1.0, 0}.validate()), Error);
  EXPECT_THROW(simulate_reconstruction(blob(), Rotation(),
                                       {NoiseKind::kGaussian, -1.0, 0}),
               Error);
}

TEST(Standardize, Examples) {
  const auto s = standardize(std::vector<double>{1.0, 3.0});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s[0], -1.0);
  EXPECT_DOUBLE_EQ(s[1], 1.0);
  EXPECT_THROW(standardize(std::vector<double>{2.0, 2.0, 2.0}), Error);
  EXPECT_THROW(standardize(std::vector<double>{2.0}), Error);

  std::mt19937_64 rng(6);
  std::lognormal_distribution<double> ln(0.0, 1.0);
  std::vector<double> x(500);
  for (double& v : x) v = ln(rng);
  const auto z = standardize(x);
  double mean = 0.0, var = 0.0;
  for (double v : z) mean += v / z.size();
  for (double v : z) var += (v - mean) * (v - mean) / z.size();
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(std::sqrt(var), 1.0, 1e-12);
}

// Pearson correlation of average ranks, built without the library.
double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1) / 2.0;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = x.size();
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

TEST(Spearman, MatchesOracle) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(*spearman_correlation(a, std::vector<double>{2, 4, 6, 8, 100}), 1.0);
  EXPECT_DOUBLE_EQ(*spearman_correlation(a, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
  EXPECT_FALSE(spearman_correlation(a, std::vector<double>{1, 1, 1, 1, 1}));

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> u(0, 9);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(60), y(60);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(rng);
      y[i] = x[i] + u(rng);
    }
    EXPECT_NEAR(*spearman_correlation(x, y), spearman_oracle(x, y), 1e-12);
  }
}

StudyConfig small_config(const std::vector<NoiseModel>& sweep) {
  StudyConfig c;
  c.sweep = sweep;
  c.trials = 100;
  c.bins = 5;
  return c;
}

TEST(CorrelationStudy, ZeroNoiseSweep) {
  const auto study = correlation_study(
      blob(), small_config({{NoiseKind::kGaussian, 0.0, 1}}));
  ASSERT_EQ(study.samples.size(), 100u);
  for (const StudySample& s : study.samples) EXPECT_LT(s.pose_loss, 1e-9);
  EXPECT_FALSE(study.rank_correlation.has_value());
  ASSERT_EQ(study.bins.size(), 1u);
  EXPECT_EQ(study.bins[0].count, 100u);
}

TEST(CorrelationStudy, SeparatedScalesOrderBins) {
  const Mesh m = blob();
  const double d = mesh_diameter(m);
  StudyConfig c = small_config({{NoiseKind::kGaussian, 0.002 * d, 1},
                                {NoiseKind::kGaussian, 0.2 * d, 2}});
  c.bins = 2;
  c.scale_spread = 0.0;
  const auto study = correlation_study(m, c);
  ASSERT_EQ(study.bins.size(), 2u);
  EXPECT_GT(study.bins[1].mean_pose_loss, study.bins[0].mean_pose_loss);
  EXPECT_EQ(count_monotone_pairs(study.bins), 1u);
}

TEST(CorrelationStudy, BinsPartitionTheSpan) {
  const Mesh m = blob();
  StudyConfig c = small_config(default_noise_sweep(m, 5));
  c.bins = 7;
  const auto study = correlation_study(m, c);
  ASSERT_EQ(study.samples.size(), 300u);
  double lo = 1e9, hi = -1e9;
  for (const StudySample& s : study.samples) {
    lo = std::min(lo, s.standardized_vertex_loss);
    hi = std::max(hi, s.standardized_vertex_loss);
  }
  for (const auto* bins : {&study.bins, &study.residual_bins}) {
    ASSERT_EQ(bins->size(), 7u);
    std::size_t total = 0;
    for (std::size_t i = 0; i < bins->size(); ++i) {
      total += (*bins)[i].count;
      if (i > 0) {
        EXPECT_EQ((*bins)[i].lower, (*bins)[i - 1].upper);
      }
    }
    EXPECT_EQ(total, 300u);
  }
  EXPECT_EQ(study.bins.front().lower, lo);
  EXPECT_EQ(study.bins.back().upper, hi);
}

TEST(CorrelationStudy, SamplesAreConsistent) {
  const Mesh m = blob();
  const auto study = correlation_study(m, small_config(default_noise_sweep(m, 8)));
  std::vector<double> lv;
  for (const StudySample& s : study.samples) lv.push_back(s.vertex_loss);
  const auto z = standardize(lv);
  for (std::size_t i = 0; i < z.size(); ++i) {
    EXPECT_NEAR(study.samples[i].standardized_vertex_loss, z[i], 1e-12);
    EXPECT_EQ(study.samples[i].level, i / 100);
    EXPECT_EQ(study.samples[i].trial, i % 100);
    EXPECT_GE(study.samples[i].pose_loss, 0.0);
    EXPECT_GE(study.samples[i].residual, 0.0);
  }
  EXPECT_TRUE(study.residual_rank_correlation.has_value());
}

TEST(CorrelationStudy, Deterministic) {
  const Mesh m = blob();
  const StudyConfig c = small_config(default_noise_sweep(m, 21));
  const auto a = correlation_study(m, c);
  const auto b = correlation_study(m, c);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].pose_loss, b.samples[i].pose_loss);
    EXPECT_EQ(a.samples[i].vertex_loss, b.samples[i].vertex_loss);
    EXPECT_EQ(a.samples[i].residual, b.samples[i].residual);
  }
  EXPECT_EQ(a.rank_correlation, b.rank_correlation);
}

TEST(CorrelationStudy, ConfigValidation) {
  const Mesh m = blob();
  StudyConfig c = small_config(default_noise_sweep(m, 1));
  c.trials = 99;
  EXPECT_THROW(correlation_study(m, c), Error);
  c.trials = 100;
  c.bins = 0;
  EXPECT_THROW(correlation_study(m, c), Error);
  c.bins = 3;
  c.sweep.clear();
  EXPECT_THROW(correlation_study(m, c), Error);
}

TEST(CountMonotonePairs, CountsNonDecreasingSteps) {
  std::vector<StudyBin> bins(4);
  const double means[] = {0.1, 0.2, 0.15, 0.15};
  for (int i = 0; i < 4; ++i) bins[i].mean_pose_loss = means[i];
  EXPECT_EQ(count_monotone_pairs(bins), 2u);
  EXPECT_EQ(count_monotone_pairs(std::vector<StudyBin>{}), 0u);
}

}  // namespace
}  // namespace posekit
