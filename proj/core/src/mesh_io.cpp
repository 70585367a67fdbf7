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

#include "posekit/mesh_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "posekit/error.hpp"

namespace posekit {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(line, "invalid number '" + std::string(tok) + "'");
  }
  return v;
}

long long parse_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "invalid integer '" + std::string(tok) + "'");
  }
  return v;
}

struct PendingFace {
  std::vector<long long> indices;  // 0-based, unchecked
  std::size_t line;
};

Mesh assemble(std::vector<Vec3> vertices, const std::vector<PendingFace>& pending) {
  std::vector<Face> faces;
  for (const PendingFace& pf : pending) {
    for (long long idx : pf.indices) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= vertices.size()) {
        throw ParseError(pf.line, "face references vertex " +
                                      std::to_string(idx + 1) + " but only " +
                                      std::to_string(vertices.size()) +
                                      " vertices exist");
      }
    }
    for (std::size_t k = 1; k + 1 < pf.indices.size(); ++k) {
      const Face f{static_cast<VertexIndex>(pf.indices[0]),
                   static_cast<VertexIndex>(pf.indices[k]),
                   static_cast<VertexIndex>(pf.indices[k + 1])};
      if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
        throw ParseError(pf.line, "face repeats a vertex index");
      }
      faces.push_back(f);
    }
  }
  if (vertices.size() < 4) {
    throw_invalid("mesh has " + std::to_string(vertices.size()) +
                  " vertices; at least 4 are required");
  }
  return Mesh::from_faces(std::move(vertices), std::move(faces));
}

Mesh load_obj(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<PendingFace> faces;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0].starts_with('#')) continue;
    if (tok[0] == "v") {
      if (tok.size() < 4 || tok.size() > 5) {
        throw ParseError(lineno, "vertex needs 3 coordinates");
      }
      vertices.emplace_back(parse_double(tok[1], lineno),
                            parse_double(tok[2], lineno),
                            parse_double(tok[3], lineno));
    } else if (tok[0] == "f") {
      if (tok.size() < 4) {
        throw ParseError(lineno, "face needs at least 3 vertices");
      }
      PendingFace pf{{}, lineno};
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const std::string_view head = tok[k].substr(0, tok[k].find('/'));
        const long long idx = parse_int(head, lineno);
        if (idx == 0) throw ParseError(lineno, "face index 0 is invalid");
        // Negative indices count back from the latest vertex.
        pf.indices.push_back(
            idx > 0 ? idx - 1
                    : static_cast<long long>(vertices.size()) + idx);
      }
      faces.push_back(std::move(pf));
    }
    // vt, vn, g, o, s, usemtl, mtllib and friends carry nothing we need.
  }
  return assemble(std::move(vertices), faces);
}

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<std::string> properties;
  bool has_list = false;
};

Mesh load_ply(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ply") throw ParseError(1, "missing 'ply' magic");
  std::vector<PlyElement> elements;
  bool ascii = false;
  bool header_done = false;
  while (next_line()) {
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "format") {
      if (tok.size() < 2) throw ParseError(lineno, "malformed format line");
      if (tok[1] != "ascii") {
        throw ParseError(lineno, "only ASCII PLY is supported");
      }
      ascii = true;
    } else if (tok[0] == "comment" || tok[0] == "obj_info") {
      continue;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) throw ParseError(lineno, "malformed element line");
      const long long n = parse_int(tok[2], lineno);
      if (n < 0) throw ParseError(lineno, "negative element count");
      elements.push_back({std::string(tok[1]), static_cast<std::size_t>(n), {}, false});
    } else if (tok[0] == "property") {
      if (elements.empty()) throw ParseError(lineno, "property before element");
      if (tok.size() >= 2 && tok[1] == "list") {
        if (tok.size() != 5) throw ParseError(lineno, "malformed list property");
        elements.back().has_list = true;
        elements.back().properties.emplace_back(tok[4]);
      } else {
        if (tok.size() != 3) throw ParseError(lineno, "malformed property");
        elements.back().properties.emplace_back(tok[2]);
      }
    } else if (tok[0] == "end_header") {
      header_done = true;
      break;
    } else {
      throw ParseError(lineno, "unexpected header keyword '" +
                                   std::string(tok[0]) + "'");
    }
  }
  if (!header_done) throw ParseError(lineno, "missing end_header");
  if (!ascii) throw ParseError(lineno, "missing format line");

  std::vector<Vec3> vertices;
  std::vector<PendingFace> faces;
  for (const PlyElement& el : elements) {
    int ix = -1, iy = -1, iz = -1;
    for (std::size_t p = 0; p < el.properties.size(); ++p) {
      if (el.properties[p] == "x") ix = static_cast<int>(p);
      if (el.properties[p] == "y") iy = static_cast<int>(p);
      if (el.properties[p] == "z") iz = static_cast<int>(p);
    }
    for (std::size_t r = 0; r < el.count; ++r) {
      if (!next_line()) throw ParseError(lineno + 1, "unexpected end of file");
      const auto tok = split_ws(line);
      if (el.name == "vertex") {
        if (el.has_list || ix < 0 || iy < 0 || iz < 0) {
          throw ParseError(lineno, "vertex element lacks x/y/z properties");
        }
        if (tok.size() != el.properties.size()) {
          throw ParseError(lineno, "vertex row has " +
                                       std::to_string(tok.size()) +
                                       " values, expected " +
                                       std::to_string(el.properties.size()));
        }
        vertices.emplace_back(parse_double(tok[ix], lineno),
                              parse_double(tok[iy], lineno),
                              parse_double(tok[iz], lineno));
      } else if (el.name == "face") {
        if (tok.empty()) throw ParseError(lineno, "empty face row");
        const long long n = parse_int(tok[0], lineno);
        if (n < 3 || static_cast<std::size_t>(n) + 1 > tok.size()) {
          throw ParseError(lineno, "malformed face row");
        }
        PendingFace pf{{}, lineno};
        for (long long k = 1; k <= n; ++k) {
          pf.indices.push_back(parse_int(tok[k], lineno));
        }
        faces.push_back(std::move(pf));
      }
    }
  }
  return assemble(std::move(vertices), faces);
}

}  // namespace

Mesh load_mesh(std::istream& in, MeshFormat format) {
  switch (format) {
    case MeshFormat::kObj:
      return load_obj(in);
    case MeshFormat::kPlyAscii:
      return load_ply(in);
  }
  throw_invalid("unknown mesh format");
}

Mesh load_mesh(std::string_view text, MeshFormat format) {
  std::istringstream in{std::string(text)};
  return load_mesh(in, format);
}

Mesh load_mesh_file(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  MeshFormat format;
  if (ext == ".obj" || ext == ".OBJ") {
    format = MeshFormat::kObj;
  } else if (ext == ".ply" || ext == ".PLY") {
    format = MeshFormat::kPlyAscii;
  } else {
    throw_invalid("unrecognized mesh extension '" + ext + "'");
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kUnresolved, "cannot open mesh " + path.string());
  }
  try {
    return load_mesh(in, format);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

}  // namespace posekit
