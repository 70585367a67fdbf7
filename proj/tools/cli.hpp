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

#ifndef POSEKIT_TOOLS_CLI_HPP_
#define POSEKIT_TOOLS_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace posekit::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUnresolved = 3;
inline constexpr int kExitDegenerate = 4;

struct RunConfig {
  std::string command;

  // Shared.
  std::filesystem::path intrinsics;
  std::filesystem::path out;
  std::uint64_t seed = 0;
  bool verbose = false;
  bool no_recenter = false;

  // evaluate
  std::filesystem::path records;
  std::filesystem::path meshes;
  std::filesystem::path symmetry;
  double add_fraction = 0.1;
  double proj_threshold = 5.0;
  double auc_max = 0.1;
  bool reorthonormalize = false;
  std::size_t subsample = 0;

  // align
  std::filesystem::path reconstructed;
  std::filesystem::path canonical;

  // lift
  std::vector<double> allocentric;  // 9 numbers, row-major
  std::filesystem::path allocentric_file;
  std::vector<double> centroid;     // u, v
  std::vector<double> roi_offset;   // optional ox, oy
  std::filesystem::path mask;
  std::optional<double> diagonal;
  double mask_threshold = 0.5;
  std::filesystem::path mesh;
  std::optional<double> reference_distance;
  int refine_iterations = 8;
  bool principal_axis = false;

  // selfcheck
  std::size_t trials = 300;
  std::size_t bins = 10;
  double scale_spread = 0.7;
  std::vector<double> scales;  // fractions of the mesh diameter
  std::string noise_kind = "gaussian-per-vertex";

  // heatmap
  std::vector<double> center;  // x, y
  int width = 64;
  int height = 64;
  double sigma = 5.0;
  bool ascii = false;
};

// Each command writes its primary output files (if any) and prints a summary
// to `out`. Failures surface as posekit::Error.
void cmd_evaluate(const RunConfig& config, std::ostream& out);
void cmd_align(const RunConfig& config, std::ostream& out);
void cmd_lift(const RunConfig& config, std::ostream& out);
void cmd_selfcheck(const RunConfig& config, std::ostream& out);
void cmd_heatmap(const RunConfig& config, std::ostream& out);

// Dispatches on config.command and maps errors onto exit codes, reporting
// them on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs.
int main_with_args(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err);

}  // namespace posekit::cli

#endif  // POSEKIT_TOOLS_CLI_HPP_
