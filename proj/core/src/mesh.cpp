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

#include "posekit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "posekit/error.hpp"

namespace posekit {

Mesh::Mesh(std::vector<Vec3> vertices)
    : vertices_(std::move(vertices)),
      topology_(build_topology(vertices_.size(), {}, {})) {}

Mesh Mesh::from_edges(std::vector<Vec3> vertices, std::vector<Edge> edges) {
  Mesh m;
  m.topology_ = build_topology(vertices.size(), std::move(edges), {});
  m.vertices_ = std::move(vertices);
  return m;
}

Mesh Mesh::from_faces(std::vector<Vec3> vertices, std::vector<Face> faces) {
  std::vector<Edge> edges;
  edges.reserve(faces.size() * 3);
  for (const Face& f : faces) {
    edges.emplace_back(f[0], f[1]);
    edges.emplace_back(f[1], f[2]);
    edges.emplace_back(f[2], f[0]);
  }
  Mesh m;
  m.topology_ =
      build_topology(vertices.size(), std::move(edges), std::move(faces));
  m.vertices_ = std::move(vertices);
  return m;
}

std::shared_ptr<const Mesh::Topology> Mesh::build_topology(
    std::size_t vertex_count, std::vector<Edge> edges,
    std::vector<Face> faces) {
  auto topo = std::make_shared<Topology>();
  for (const Face& f : faces) {
    for (VertexIndex i : f) {
      if (i >= vertex_count) {
        throw_invalid("face references vertex " + std::to_string(i) +
                      " but the mesh has " + std::to_string(vertex_count) +
                      " vertices");
      }
    }
  }
  for (Edge& e : edges) {
    if (e.first >= vertex_count || e.second >= vertex_count) {
      throw_invalid("edge (" + std::to_string(e.first) + ", " +
                    std::to_string(e.second) + ") is out of range");
    }
    if (e.first == e.second) {
      throw_invalid("self-loop on vertex " + std::to_string(e.first));
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  topo->offsets.assign(vertex_count + 1, 0);
  for (const Edge& e : edges) {
    ++topo->offsets[e.first + 1];
    ++topo->offsets[e.second + 1];
  }
  for (std::size_t i = 0; i < vertex_count; ++i) {
    topo->offsets[i + 1] += topo->offsets[i];
  }
  topo->adjacency.resize(topo->offsets.back());
  std::vector<std::size_t> cursor(topo->offsets.begin(),
                                  topo->offsets.end() - 1);
  for (const Edge& e : edges) {
    topo->adjacency[cursor[e.first]++] = e.second;
    topo->adjacency[cursor[e.second]++] = e.first;
  }
  for (std::size_t i = 0; i < vertex_count; ++i) {
    std::sort(topo->adjacency.begin() + topo->offsets[i],
              topo->adjacency.begin() + topo->offsets[i + 1]);
  }
  topo->edges = std::move(edges);
  topo->faces = std::move(faces);
  return topo;
}

std::span<const Edge> Mesh::edges() const {
  if (!topology_) return {};
  return topology_->edges;
}

std::span<const Face> Mesh::faces() const {
  if (!topology_) return {};
  return topology_->faces;
}

std::span<const VertexIndex> Mesh::neighbors(VertexIndex i) const {
  if (!topology_) return {};
  const auto begin = topology_->adjacency.begin();
  return {begin + topology_->offsets[i], begin + topology_->offsets[i + 1]};
}

Mesh Mesh::with_vertices(std::vector<Vec3> vertices) const {
  if (vertices.size() != vertices_.size()) {
    throw_invalid("vertex count " + std::to_string(vertices.size()) +
                  " does not match mesh topology with " +
                  std::to_string(vertices_.size()) + " vertices");
  }
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.topology_ = topology_;
  return m;
}

bool Mesh::same_topology(const Mesh& other) const {
  if (vertices_.size() != other.vertices_.size()) return false;
  if (topology_ == other.topology_) return true;
  const auto a = edges();
  const auto b = other.edges();
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

SymmetrySpec SymmetrySpec::discrete(const Vec3& axis, int order) {
  SymmetrySpec s;
  s.axis = axis.normalized();
  s.order = order;
  s.validate();
  return s;
}

SymmetrySpec SymmetrySpec::continuous_about(const Vec3& axis, int samples) {
  SymmetrySpec s;
  s.axis = axis.normalized();
  s.continuous = true;
  s.samples = samples;
  s.validate();
  return s;
}

void SymmetrySpec::validate() const {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-9) {
    throw_invalid("symmetry axis must have unit norm");
  }
  if (order < 1) throw_invalid("symmetry order must be >= 1");
  if (continuous && samples < 1) {
    throw_invalid("continuous symmetry needs >= 1 sample");
  }
}

double mesh_diameter(const Mesh& mesh) {
  const auto v = mesh.vertices();
  if (v.size() < 2) throw_invalid("diameter needs at least 2 vertices");
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      best = std::max(best, (v[i] - v[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

Vec3 mesh_centroid(const Mesh& mesh) {
  const auto v = mesh.vertices();
  if (v.empty()) throw_invalid("centroid of an empty mesh");
  Vec3 sum = Vec3::Zero();
  for (const Vec3& p : v) sum += p;
  return sum / static_cast<double>(v.size());
}

Mesh center_mesh(const Mesh& mesh) {
  const Vec3 c = mesh_centroid(mesh);
  std::vector<Vec3> out(mesh.vertices().begin(), mesh.vertices().end());
  for (Vec3& p : out) p -= c;
  return mesh.with_vertices(std::move(out));
}

Mesh transform_mesh(const Mesh& mesh, const Pose6D& pose) {
  std::vector<Vec3> out;
  out.reserve(mesh.vertex_count());
  for (const Vec3& p : mesh.vertices()) out.push_back(pose.apply(p));
  return mesh.with_vertices(std::move(out));
}

Mesh rotate_mesh(const Mesh& mesh, const Rotation& rotation) {
  return transform_mesh(mesh, Pose6D{rotation, Vec3::Zero()});
}

std::span<const VertexIndex> neighborhood(const Mesh& mesh, VertexIndex i) {
  if (i >= mesh.vertex_count()) {
    throw_invalid("vertex index " + std::to_string(i) + " out of range");
  }
  return mesh.neighbors(i);
}

std::vector<Rotation> symmetry_rotations(const SymmetrySpec& spec) {
  spec.validate();
  const int k = spec.count();
  std::vector<Rotation> out;
  out.reserve(k);
  out.push_back(Rotation::identity());
  for (int j = 1; j < k; ++j) {
    out.push_back(Rotation::axis_angle(
        spec.axis, 2.0 * std::numbers::pi * static_cast<double>(j) / k));
  }
  return out;
}

}  // namespace posekit
