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

#include "posekit/lift.hpp"
#include "posekit/random.hpp"

namespace posekit {
namespace {

const CameraIntrinsics kCamera{572.4114, 573.57043, 325.2611, 242.04899, 640, 480};

void BM_LiftPose(benchmark::State& state) {
  Rng rng(8);
  std::vector<Vec3> v(static_cast<std::size_t>(state.range(0)));
  for (Vec3& p : v) p = 0.04 * rng.normal3();
  const Mesh mesh(std::move(v));
  const Pose6D truth{rng.rotation(), Vec3(0.05, -0.03, 0.7)};
  const Rotation rc = rotation_to_ray(truth.translation.normalized());
  const Rotation allocentric = rc.inverse() * truth.rotation;
  const Vec2 centroid = project_point(kCamera, truth.translation);
  const double diagonal = projected_bbox_diagonal(kCamera, mesh, truth);
  LiftOptions options;
  options.refine_iterations = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lift_pose(allocentric, centroid, diagonal, kCamera, mesh, options));
  }
}
BENCHMARK(BM_LiftPose)->ArgsProduct({{500, 5000}, {0, 8}});

void BM_HeatmapRoundtrip(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Vec2 center(size * 0.41, size * 0.57);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        decode_heatmap(make_centroid_heatmap(center, size, size)));
  }
}
BENCHMARK(BM_HeatmapRoundtrip)->Arg(64)->Arg(256);

}  // namespace
}  // namespace posekit
