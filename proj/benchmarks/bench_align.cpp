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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "posekit/align.hpp"
#include "posekit/random.hpp"

namespace posekit {
namespace {

std::vector<Vec3> centered_cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec3> pts(n);
  Vec3 mean = Vec3::Zero();
  for (Vec3& p : pts) {
    p = rng.normal3().cwiseProduct(Vec3(0.05, 0.03, 0.02));
    mean += p;
  }
  mean /= static_cast<double>(n);
  for (Vec3& p : pts) p -= mean;
  return pts;
}

void BM_ProcrustesAlign(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto canonical = centered_cloud(n, 1);
  Rng rng(2);
  const Rotation r = rng.rotation();
  std::vector<Vec3> rotated;
  for (const Vec3& p : canonical) rotated.push_back(r * p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(procrustes_align(rotated, canonical));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProcrustesAlign)->RangeMultiplier(8)->Range(64, 32768);

void BM_PoseLoss(benchmark::State& state) {
  Rng rng(3);
  const Rotation a = rng.rotation();
  const Rotation b = rng.rotation();
  for (auto _ : state) benchmark::DoNotOptimize(pose_loss(a, b));
}
BENCHMARK(BM_PoseLoss);

}  // namespace
}  // namespace posekit
