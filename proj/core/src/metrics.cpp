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

#include "posekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "posekit/error.hpp"
#include "posekit/random.hpp"

namespace posekit {
namespace {

void check_nonempty(const Mesh& mesh) {
  if (mesh.vertex_count() == 0) throw_invalid("metric on an empty mesh");
}

}  // namespace

double add_distance(const Pose6D& groundtruth, const Pose6D& predicted,
                    const Mesh& mesh) {
  check_nonempty(mesh);
  double sum = 0.0;
  for (const Vec3& v : mesh.vertices()) {
    sum += (groundtruth.apply(v) - predicted.apply(v)).norm();
  }
  return sum / static_cast<double>(mesh.vertex_count());
}

double adi_distance(const Pose6D& groundtruth, const Pose6D& predicted,
                    const Mesh& mesh) {
  check_nonempty(mesh);
  const auto v = mesh.vertices();
  std::vector<Vec3> posed(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) posed[k] = predicted.apply(v[k]);
  double sum = 0.0;
  for (const Vec3& vi : v) {
    const Vec3 g = groundtruth.apply(vi);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& p : posed) best = std::min(best, (g - p).squaredNorm());
    sum += std::sqrt(best);
  }
  return sum / static_cast<double>(v.size());
}

double proj2d_error(const Pose6D& groundtruth, const Pose6D& predicted,
                    const Mesh& mesh, const CameraIntrinsics& k) {
  check_nonempty(mesh);
  k.validate();
  double sum = 0.0;
  for (const Vec3& v : mesh.vertices()) {
    sum += (project_point(k, groundtruth.apply(v)) -
            project_point(k, predicted.apply(v)))
               .norm();
  }
  return sum / static_cast<double>(mesh.vertex_count());
}

bool is_correct_add(double distance, double diameter, double fraction) {
  if (!(diameter > 0.0)) throw_invalid("diameter must be positive");
  // The product carries one rounding; a distance within a few ulps of it is
  // treated as sitting on the threshold, so 0.010 vs 0.1 * 0.1 is rejected.
  const double threshold = fraction * diameter;
  return distance < threshold * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
}

bool is_correct_proj(double error, double threshold) {
  return error < threshold;
}

double auc(std::span<const double> distances, double max_threshold) {
  if (distances.empty()) throw_invalid("AUC of an empty distance list");
  if (!(max_threshold > 0.0)) throw_invalid("AUC max threshold must be positive");
  double sum = 0.0;
  for (double d : distances) {
    if (!(d >= 0.0)) throw_invalid("distances must be nonnegative");
    sum += std::max(0.0, 1.0 - d / max_threshold);
  }
  return sum / static_cast<double>(distances.size());
}

void MetricThresholds::validate() const {
  if (!(add_fraction > 0.0) || !(proj_px > 0.0) || !(auc_max > 0.0)) {
    throw_invalid("metric thresholds must be positive");
  }
}

std::vector<VertexIndex> subsample_indices(std::size_t vertex_count,
                                           std::size_t count,
                                           std::uint64_t seed) {
  std::vector<VertexIndex> idx(vertex_count);
  std::iota(idx.begin(), idx.end(), VertexIndex{0});
  if (count >= vertex_count) return idx;
  Rng rng(seed);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.index(vertex_count - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

MetricsReport aggregate(std::span<const EvalRecord> records,
                        const std::map<std::string, Mesh>& meshes,
                        const std::map<std::string, bool>& symmetric,
                        const AggregateOptions& options) {
  options.thresholds.validate();
  if (records.empty()) throw_invalid("no records to evaluate");

  struct Accum {
    std::vector<double> distances;
    std::size_t add_correct = 0;
    std::size_t proj_correct = 0;
    double proj_sum = 0.0;
  };
  std::map<std::string, Accum> per_object;
  std::map<std::string, double> diameters;
  std::map<std::string, Mesh> adi_meshes;

  for (const EvalRecord& rec : records) {
    const auto mesh_it = meshes.find(rec.object_id);
    if (mesh_it == meshes.end()) {
      throw Error(ErrorKind::kUnresolved,
                  "no mesh for object id '" + rec.object_id + "'");
    }
    const Mesh& mesh = mesh_it->second;
    auto sym_it = symmetric.find(rec.object_id);
    const bool sym = sym_it != symmetric.end() && sym_it->second;

    auto [diam_it, fresh] = diameters.try_emplace(rec.object_id, 0.0);
    if (fresh) {
      diam_it->second = mesh_diameter(mesh);
      if (sym && options.adi_subsample > 0 &&
          mesh.vertex_count() > options.adi_subsample) {
        std::vector<Vec3> sub;
        for (VertexIndex i :
             subsample_indices(mesh.vertex_count(), options.adi_subsample,
                               options.subsample_seed)) {
          sub.push_back(mesh.vertices()[i]);
        }
        adi_meshes.emplace(rec.object_id, Mesh(std::move(sub)));
      }
    }

    double distance;
    if (sym) {
      const auto sub_it = adi_meshes.find(rec.object_id);
      distance = adi_distance(rec.groundtruth, rec.predicted,
                              sub_it != adi_meshes.end() ? sub_it->second : mesh);
    } else {
      distance = add_distance(rec.groundtruth, rec.predicted, mesh);
    }
    const double proj =
        proj2d_error(rec.groundtruth, rec.predicted, mesh, rec.intrinsics);

    Accum& acc = per_object[rec.object_id];
    acc.distances.push_back(distance);
    acc.proj_sum += proj;
    if (is_correct_add(distance, diam_it->second,
                       options.thresholds.add_fraction)) {
      ++acc.add_correct;
    }
    if (is_correct_proj(proj, options.thresholds.proj_px)) ++acc.proj_correct;
  }

  MetricsReport report;
  report.thresholds = options.thresholds;
  report.average.object_id = "Average";
  for (const auto& [id, acc] : per_object) {
    ObjectMetrics m;
    m.object_id = id;
    const auto sym_it = symmetric.find(id);
    m.symmetric = sym_it != symmetric.end() && sym_it->second;
    m.count = acc.distances.size();
    m.diameter = diameters.at(id);
    const double n = static_cast<double>(m.count);
    m.add_accuracy = static_cast<double>(acc.add_correct) / n;
    m.proj2d_accuracy = static_cast<double>(acc.proj_correct) / n;
    m.auc = auc(acc.distances, options.thresholds.auc_max);
    m.mean_distance =
        std::accumulate(acc.distances.begin(), acc.distances.end(), 0.0) / n;
    m.mean_proj2d_error = acc.proj_sum / n;
    report.objects.push_back(m);
  }

  ObjectMetrics& avg = report.average;
  for (const ObjectMetrics& m : report.objects) {
    avg.count += m.count;
    avg.add_accuracy += m.add_accuracy;
    avg.proj2d_accuracy += m.proj2d_accuracy;
    avg.auc += m.auc;
    avg.mean_distance += m.mean_distance;
    avg.mean_proj2d_error += m.mean_proj2d_error;
  }
  const double k = static_cast<double>(report.objects.size());
  avg.add_accuracy /= k;
  avg.proj2d_accuracy /= k;
  avg.auc /= k;
  avg.mean_distance /= k;
  avg.mean_proj2d_error /= k;
  return report;
}

}  // namespace posekit
