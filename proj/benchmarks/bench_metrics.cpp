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

#include <vector>

#include <benchmark/benchmark.h>

#include "posekit/mesh.hpp"
#include "posekit/metrics.hpp"
#include "posekit/random.hpp"

namespace posekit {
namespace {

Mesh random_mesh(std::size_t n) {
  Rng rng(5);
  std::vector<Vec3> v(n);
  for (Vec3& p : v) p = 0.05 * rng.normal3();
  return Mesh(std::move(v));
}

Pose6D random_pose(Rng& rng) {
  return {rng.rotation(), Vec3(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), 1.0)};
}

void BM_AddDistance(benchmark::State& state) {
  const Mesh m = random_mesh(static_cast<std::size_t>(state.range(0)));
  Rng rng(6);
  const Pose6D gt = random_pose(rng), pred = random_pose(rng);
  for (auto _ : state) benchmark::DoNotOptimize(add_distance(gt, pred, m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AddDistance)->RangeMultiplier(4)->Range(256, 16384);

// Exact ADI is quadratic in the vertex count.
void BM_AdiDistance(benchmark::State& state) {
  const Mesh m = random_mesh(static_cast<std::size_t>(state.range(0)));
  Rng rng(7);
  const Pose6D gt = random_pose(rng), pred = random_pose(rng);
  for (auto _ : state) benchmark::DoNotOptimize(adi_distance(gt, pred, m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AdiDistance)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_MeshDiameter(benchmark::State& state) {
  const Mesh m = random_mesh(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mesh_diameter(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeshDiameter)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

}  // namespace
}  // namespace posekit
