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

#ifndef POSEKIT_SERIALIZATION_HPP_
#define POSEKIT_SERIALIZATION_HPP_

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "posekit/lift.hpp"
#include "posekit/metrics.hpp"
#include "posekit/sim.hpp"

namespace posekit {

// Rotations serialize as nine numbers, row-major; poses as
// {"R": [9 numbers], "t": [3 numbers]}.
std::string rotation_to_json(const Rotation& r);
std::string pose_to_json(const Pose6D& pose);
// Accepts either a bare 9-array or an object with an "R" member.
Rotation parse_rotation_json(std::string_view text, double tolerance = 1e-4,
                             bool reorthonormalize = false);

struct RecordReadOptions {
  // Rotations deviating from SO(3) by more than this are rejected.
  double rotation_tolerance = 1e-4;
  // Project every rotation onto SO(3) instead of rejecting it.
  bool reorthonormalize = false;
};

// JSON lines, one record per line:
//   {"id": "ape", "gt": {"R": [...], "t": [...]},
//    "pred": {"R": [...], "t": [...]}, "K": {...}}
// "K" is optional and overrides `default_intrinsics`. Blank lines are skipped.
// Accepted rotations are snapped onto SO(3) (they are within the tolerance).
// Malformed lines throw ParseError; an empty file throws kInvalidInput.
std::vector<EvalRecord> read_records(std::istream& in,
                                     const CameraIntrinsics& default_intrinsics,
                                     const RecordReadOptions& options = {},
                                     const std::string& source = {});

// {"fx": .., "fy": .., "cx": .., "cy": .., "width": .., "height": ..}
CameraIntrinsics parse_intrinsics(std::string_view text);
CameraIntrinsics read_intrinsics_file(const std::filesystem::path& path);

// Object id -> symmetry. Values are either booleans (symmetric or not) or
// objects {"axis": [x, y, z], "order": k} / {"axis": [...], "continuous":
// true, "samples": n}.
struct SymmetryTable {
  std::map<std::string, bool> symmetric;
  std::map<std::string, SymmetrySpec> specs;  // only entries given as objects
};
SymmetryTable parse_symmetry_table(std::string_view text);
SymmetryTable read_symmetry_file(const std::filesystem::path& path);

// "x,y,z" per line; blank lines and lines starting with '#' are skipped, and
// a first line that does not parse as numbers is taken as a header.
std::vector<Vec3> read_points_csv(std::istream& in,
                                  const std::string& source = {});

std::string report_to_json(const MetricsReport& report);
// Objects as rows, accuracies in percent, "*" after symmetric (ADI) objects,
// and a closing "Average" row.
std::string report_to_text(const MetricsReport& report);

std::string study_to_json(const CorrelationStudy& study);
// Header plus one row per sample.
std::string study_to_csv(const CorrelationStudy& study);

std::string lift_to_json(const LiftResult& result, bool verbose);

}  // namespace posekit

#endif  // POSEKIT_SERIALIZATION_HPP_
