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

#ifndef POSEKIT_METRICS_HPP_
#define POSEKIT_METRICS_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "posekit/lift.hpp"
#include "posekit/mesh.hpp"
#include "posekit/pose.hpp"

namespace posekit {

// Mean distance between corresponding model vertices under the two poses.
double add_distance(const Pose6D& groundtruth, const Pose6D& predicted,
                    const Mesh& mesh);

// Closest-point variant: for each groundtruth-posed vertex, the distance to
// the nearest predicted-posed vertex, averaged. Exact O(n^2).
double adi_distance(const Pose6D& groundtruth, const Pose6D& predicted,
                    const Mesh& mesh);

// Mean pixel distance between the projections of each vertex under the two
// poses. Throws kInvalidInput if a vertex falls behind the camera.
double proj2d_error(const Pose6D& groundtruth, const Pose6D& predicted,
                    const Mesh& mesh, const CameraIntrinsics& k);

// distance < fraction * diameter (strict). A distance within 4 ulps below the
// product counts as on the threshold and is rejected.
bool is_correct_add(double distance, double diameter, double fraction = 0.1);
// error < threshold (strict).
bool is_correct_proj(double error, double threshold = 5.0);

// Area under the accuracy-vs-threshold curve for thresholds in
// [0, max_threshold], normalized to [0, 1]. Closed form:
// mean_i max(0, 1 - d_i / max_threshold).
double auc(std::span<const double> distances, double max_threshold = 0.1);

struct MetricThresholds {
  double add_fraction = 0.1;  // of the object diameter
  double proj_px = 5.0;
  double auc_max = 0.1;  // meters

  void validate() const;
};

struct EvalRecord {
  std::string object_id;
  Pose6D groundtruth;
  Pose6D predicted;
  CameraIntrinsics intrinsics;
};

struct ObjectMetrics {
  std::string object_id;
  bool symmetric = false;  // ADI instead of ADD
  std::size_t count = 0;
  double diameter = 0.0;
  double add_accuracy = 0.0;
  double proj2d_accuracy = 0.0;
  double auc = 0.0;
  double mean_distance = 0.0;
  double mean_proj2d_error = 0.0;
};

struct MetricsReport {
  MetricThresholds thresholds;
  std::vector<ObjectMetrics> objects;  // sorted by object id
  // Unweighted means over objects; object_id is "Average" and count is the
  // total number of records.
  ObjectMetrics average;
};

struct AggregateOptions {
  MetricThresholds thresholds;
  // When nonzero, ADI on meshes with more vertices than this uses a seeded
  // subset of that many vertices.
  std::size_t adi_subsample = 0;
  std::uint64_t subsample_seed = 0;
};

// Seeded subset of `count` vertex indices, sorted. Returns all indices when
// count >= vertex_count.
std::vector<VertexIndex> subsample_indices(std::size_t vertex_count,
                                           std::size_t count,
                                           std::uint64_t seed);

// Per-object accuracies and unweighted averages. Objects flagged in
// `symmetric` use ADI; others ADD. Throws kUnresolved for record ids missing
// from `meshes` and kInvalidInput for an empty record list.
MetricsReport aggregate(std::span<const EvalRecord> records,
                        const std::map<std::string, Mesh>& meshes,
                        const std::map<std::string, bool>& symmetric,
                        const AggregateOptions& options = {});

}  // namespace posekit

#endif  // POSEKIT_METRICS_HPP_
