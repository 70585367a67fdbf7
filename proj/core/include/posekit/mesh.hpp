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

#ifndef POSEKIT_MESH_HPP_
#define POSEKIT_MESH_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "posekit/pose.hpp"
#include "posekit/rotation.hpp"

namespace posekit {

using VertexIndex = std::uint32_t;
// Undirected edge, stored with first < second.
using Edge = std::pair<VertexIndex, VertexIndex>;
using Face = std::array<VertexIndex, 3>;

// Object surface as an undirected graph over its vertices. The topology
// (edges, faces, adjacency) is immutable and shared between meshes derived
// from one another, so transformed copies are cheap and compare equal in
// topology.
class Mesh {
 public:
  Mesh() = default;

  // Vertices only; no edges.
  explicit Mesh(std::vector<Vec3> vertices);

  // Edges are normalized, deduplicated and sorted. Throws kInvalidInput on
  // self-loops or out-of-range indices.
  static Mesh from_edges(std::vector<Vec3> vertices, std::vector<Edge> edges);

  // Edges are the deduplicated union of the triangle edges.
  static Mesh from_faces(std::vector<Vec3> vertices, std::vector<Face> faces);

  std::span<const Vec3> vertices() const { return vertices_; }
  std::span<const Edge> edges() const;
  std::span<const Face> faces() const;
  std::size_t vertex_count() const { return vertices_.size(); }

  // Sorted neighbor indices of vertex i. Unchecked; see neighborhood().
  std::span<const VertexIndex> neighbors(VertexIndex i) const;

  // Same topology, new vertex positions. Throws on a count mismatch.
  Mesh with_vertices(std::vector<Vec3> vertices) const;

  bool same_topology(const Mesh& other) const;

 private:
  struct Topology {
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<std::size_t> offsets;  // CSR row starts, size n + 1
    std::vector<VertexIndex> adjacency;
  };

  static std::shared_ptr<const Topology> build_topology(
      std::size_t vertex_count, std::vector<Edge> edges,
      std::vector<Face> faces);

  std::vector<Vec3> vertices_;
  std::shared_ptr<const Topology> topology_;
};

// Axis of rotational symmetry in model space. `order` k generates rotations by
// 2*pi*j/k; order 1 is an asymmetric object. A continuous symmetry is
// discretized into `samples` rotations.
struct SymmetrySpec {
  Vec3 axis = Vec3::UnitZ();
  int order = 1;
  bool continuous = false;
  int samples = 36;

  static SymmetrySpec none() { return {}; }
  static SymmetrySpec discrete(const Vec3& axis, int order);
  static SymmetrySpec continuous_about(const Vec3& axis, int samples = 36);

  // Throws kInvalidInput unless the axis is unit within 1e-9 and counts are
  // positive.
  void validate() const;
  // Number of generated rotations.
  int count() const { return continuous ? samples : order; }
  bool is_symmetric() const { return count() > 1; }
};

// Exact maximum pairwise vertex distance, O(n^2). Needs >= 2 vertices.
double mesh_diameter(const Mesh& mesh);

Vec3 mesh_centroid(const Mesh& mesh);

// Shifts vertices so their mean is the origin.
Mesh center_mesh(const Mesh& mesh);

Mesh transform_mesh(const Mesh& mesh, const Pose6D& pose);
Mesh rotate_mesh(const Mesh& mesh, const Rotation& rotation);

// Neighbor set of vertex i; throws kInvalidInput if i is out of range.
std::span<const VertexIndex> neighborhood(const Mesh& mesh, VertexIndex i);

// Rotations about the symmetry axis, uniformly spaced in angle, identity
// first.
std::vector<Rotation> symmetry_rotations(const SymmetrySpec& spec);

}  // namespace posekit

#endif  // POSEKIT_MESH_HPP_
