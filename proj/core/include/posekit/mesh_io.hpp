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

#ifndef POSEKIT_MESH_IO_HPP_
#define POSEKIT_MESH_IO_HPP_

#include <filesystem>
#include <istream>
#include <string_view>

#include "posekit/mesh.hpp"

namespace posekit {

enum class MeshFormat { kObj, kPlyAscii };

// Parses ASCII OBJ ("v x y z", "f a b c ...", 1-based, polygon faces are
// fan-triangulated) or ASCII PLY (vertex and face elements). Vertices keep
// file order; nothing is recentered. Throws ParseError carrying the offending
// line, or kInvalidInput for meshes with fewer than 4 vertices.
Mesh load_mesh(std::istream& in, MeshFormat format);
Mesh load_mesh(std::string_view text, MeshFormat format);

// Format is picked from the extension (.obj / .ply).
Mesh load_mesh_file(const std::filesystem::path& path);

}  // namespace posekit

#endif  // POSEKIT_MESH_IO_HPP_
