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

#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "posekit/align.hpp"
#include "posekit/error.hpp"
#include "posekit/image.hpp"
#include "posekit/lift.hpp"
#include "posekit/mesh_io.hpp"
#include "posekit/random.hpp"
#include "posekit/metrics.hpp"
#include "posekit/serialization.hpp"
#include "posekit/sim.hpp"

namespace posekit::cli {
namespace {

namespace fs = std::filesystem;

void require_path(const fs::path& path, const char* flag) {
  if (path.empty()) throw_invalid(std::string("missing required ") + flag);
  if (!fs::exists(path)) {
    throw Error(ErrorKind::kUnresolved,
                std::string(flag) + ": no such file or directory: " +
                    path.string());
  }
}

// Files are staged next to their targets and renamed once all are written,
// so an error leaves no partial output behind.
class OutputSet {
 public:
  void add(fs::path path, std::string contents) {
    files_.emplace_back(std::move(path), std::move(contents));
  }

  void commit() {
    std::vector<fs::path> staged;
    try {
      for (const auto& [path, contents] : files_) {
        fs::path tmp = path;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::binary);
        staged.push_back(tmp);
        if (!out || !(out << contents) || !out.flush()) {
          throw_invalid("cannot write " + path.string());
        }
      }
      for (std::size_t i = 0; i < files_.size(); ++i) {
        fs::rename(staged[i], files_[i].first);
      }
    } catch (...) {
      std::error_code ec;
      for (const fs::path& p : staged) fs::remove(p, ec);
      for (const auto& f : files_) fs::remove(f.first, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

fs::path strip_extension(fs::path base, const char* ext) {
  if (base.extension() == ext) base.replace_extension();
  return base;
}

fs::path with_suffix(const fs::path& base, const char* suffix) {
  fs::path p = base;
  p += suffix;
  return p;
}

Mesh load_object_mesh(const fs::path& path, bool recenter) {
  Mesh mesh = load_mesh_file(path);
  return recenter ? center_mesh(mesh) : mesh;
}

std::vector<Vec3> load_points(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kUnresolved, "cannot open " + path.string());
  return read_points_csv(in, path.string());
}

std::vector<Vec3> centered(std::vector<Vec3> points) {
  if (points.empty()) return points;
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  for (Vec3& p : points) p -= mean;
  return points;
}

Vec2 pair_of(const std::vector<double>& v, const char* flag) {
  if (v.size() != 2) throw_invalid(std::string(flag) + " needs two numbers");
  return {v[0], v[1]};
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void cmd_evaluate(const RunConfig& config, std::ostream& out) {
  require_path(config.records, "--records");
  require_path(config.meshes, "--meshes");
  require_path(config.intrinsics, "--intrinsics");
  if (!config.symmetry.empty()) require_path(config.symmetry, "--symmetry");

  AggregateOptions options;
  options.thresholds = {config.add_fraction, config.proj_threshold,
                        config.auc_max};
  options.thresholds.validate();
  options.adi_subsample = config.subsample;
  options.subsample_seed = config.seed;

  const CameraIntrinsics k = read_intrinsics_file(config.intrinsics);
  SymmetryTable symmetry;
  if (!config.symmetry.empty()) symmetry = read_symmetry_file(config.symmetry);

  std::ifstream in(config.records);
  if (!in) {
    throw Error(ErrorKind::kUnresolved,
                "cannot open " + config.records.string());
  }
  RecordReadOptions read_options;
  read_options.reorthonormalize = config.reorthonormalize;
  const std::vector<EvalRecord> records =
      read_records(in, k, read_options, config.records.string());

  std::set<std::string> ids;
  for (const EvalRecord& r : records) ids.insert(r.object_id);
  std::map<std::string, Mesh> meshes;
  for (const std::string& id : ids) {
    fs::path found;
    for (const char* ext : {".obj", ".ply"}) {
      const fs::path candidate = config.meshes / (id + ext);
      if (fs::exists(candidate)) {
        found = candidate;
        break;
      }
    }
    if (found.empty()) {
      throw Error(ErrorKind::kUnresolved,
                  "object id '" + id + "' has no mesh in " +
                      config.meshes.string());
    }
    meshes.emplace(id, load_object_mesh(found, !config.no_recenter));
  }

  const MetricsReport report =
      aggregate(records, meshes, symmetry.symmetric, options);
  const std::string text = report_to_text(report);
  if (!config.out.empty()) {
    const fs::path base = strip_extension(config.out, ".json");
    OutputSet outputs;
    outputs.add(with_suffix(base, ".json"), report_to_json(report));
    outputs.add(with_suffix(base, ".txt"), text);
    outputs.commit();
  }
  out << text;
}

void cmd_align(const RunConfig& config, std::ostream& out) {
  require_path(config.reconstructed, "--reconstructed");
  require_path(config.canonical, "--canonical");
  std::vector<Vec3> reconstructed = load_points(config.reconstructed);
  std::vector<Vec3> canonical = load_points(config.canonical);
  if (reconstructed.size() != canonical.size()) {
    throw_invalid("point count mismatch: " +
                  std::to_string(reconstructed.size()) + " vs " +
                  std::to_string(canonical.size()));
  }
  if (!config.no_recenter) {
    reconstructed = centered(std::move(reconstructed));
    canonical = centered(std::move(canonical));
  }
  const Rotation r = procrustes_align(reconstructed, canonical);
  const double residual = procrustes_residual(reconstructed, canonical, r);

  nlohmann::json j;
  j["R"] = nlohmann::json::parse(rotation_to_json(r));
  j["residual"] = residual;
  const std::string text = j.dump(2) + "\n";
  if (!config.out.empty()) {
    OutputSet outputs;
    outputs.add(config.out, text);
    outputs.commit();
  }
  out << text;
}

void cmd_lift(const RunConfig& config, std::ostream& out) {
  require_path(config.intrinsics, "--intrinsics");
  require_path(config.mesh, "--mesh");
  if (!config.allocentric_file.empty()) {
    require_path(config.allocentric_file, "--allocentric-file");
  }
  if (!config.mask.empty()) require_path(config.mask, "--mask");

  Rotation allocentric;
  if (!config.allocentric_file.empty()) {
    std::ifstream in(config.allocentric_file);
    std::stringstream ss;
    ss << in.rdbuf();
    allocentric = parse_rotation_json(ss.str(), 1e-4, config.reorthonormalize);
  } else if (config.allocentric.size() == 9) {
    nlohmann::json j(config.allocentric);
    allocentric = parse_rotation_json(j.dump(), 1e-4, config.reorthonormalize);
  } else {
    throw_invalid("--allocentric needs 9 numbers (or use --allocentric-file)");
  }

  Vec2 centroid = pair_of(config.centroid, "--centroid");
  if (!config.roi_offset.empty()) {
    centroid = roi_to_image(centroid, pair_of(config.roi_offset, "--roi-offset"));
  }

  double diagonal = 0.0;
  if (config.diagonal && !config.mask.empty()) {
    throw_invalid("give either --mask or --diagonal, not both");
  } else if (config.diagonal) {
    diagonal = *config.diagonal;
  } else if (!config.mask.empty()) {
    diagonal = mask_bbox_diagonal(read_mask_pgm(config.mask),
                                  config.mask_threshold);
  } else {
    throw_invalid("lift needs --mask or --diagonal");
  }

  const CameraIntrinsics k = read_intrinsics_file(config.intrinsics);
  const Mesh mesh = load_object_mesh(config.mesh, !config.no_recenter);
  LiftOptions options;
  options.reference_distance = config.reference_distance;
  options.refine_iterations = config.refine_iterations;
  options.frame = config.principal_axis ? ReferenceFrame::kPrincipalAxis
                                        : ReferenceFrame::kViewingRay;
  const LiftResult result =
      lift_pose(allocentric, centroid, diagonal, k, mesh, options);
  const std::string text = lift_to_json(result, config.verbose);
  if (!config.out.empty()) {
    OutputSet outputs;
    outputs.add(config.out, text);
    outputs.commit();
  }
  out << text;
}

void cmd_selfcheck(const RunConfig& config, std::ostream& out) {
  require_path(config.mesh, "--mesh");
  if (config.trials < 100) {
    throw_invalid("--trials must be at least 100 per noise level");
  }
  if (config.bins < 1) throw_invalid("--bins must be at least 1");
  const Mesh mesh = load_object_mesh(config.mesh, true);

  StudyConfig study_config;
  study_config.trials = config.trials;
  study_config.bins = config.bins;
  study_config.scale_spread = config.scale_spread;
  const NoiseKind kind = parse_noise_kind(config.noise_kind);
  if (config.scales.empty()) {
    study_config.sweep = default_noise_sweep(mesh, config.seed);
    for (NoiseModel& m : study_config.sweep) m.kind = kind;
  } else {
    const double diameter = mesh_diameter(mesh);
    for (std::size_t i = 0; i < config.scales.size(); ++i) {
      study_config.sweep.push_back(
          {kind, config.scales[i] * diameter, mix_seed(config.seed, i)});
    }
  }

  const CorrelationStudy study = correlation_study(mesh, study_config);
  if (!config.out.empty()) {
    const fs::path base = strip_extension(config.out, ".json");
    OutputSet outputs;
    outputs.add(with_suffix(base, ".json"), study_to_json(study));
    outputs.add(with_suffix(base, ".csv"), study_to_csv(study));
    outputs.commit();
  }

  out << "samples: " << study.samples.size() << '\n';
  out << "rank correlation (vertex loss vs pose loss): "
      << (study.rank_correlation ? format_double(*study.rank_correlation)
                                 : std::string("undefined"))
      << '\n';
  out << "rank correlation (alignment residual vs pose loss): "
      << (study.residual_rank_correlation
              ? format_double(*study.residual_rank_correlation)
              : std::string("undefined"))
      << '\n';
  out << "monotone adjacent bin pairs: " << count_monotone_pairs(study.bins)
      << " of " << (study.bins.empty() ? 0 : study.bins.size() - 1) << '\n';
  out << "bins (standardized vertex loss -> mean pose loss [rad]):\n";
  for (const StudyBin& b : study.bins) {
    char line[160];
    std::snprintf(line, sizeof(line), "  [%+8.3f, %+8.3f]  %12.6g  n=%zu\n",
                  b.lower, b.upper, b.mean_pose_loss, b.count);
    out << line;
  }
}

void cmd_heatmap(const RunConfig& config, std::ostream& out) {
  if (config.out.empty()) throw_invalid("heatmap needs --out");
  const Vec2 center = pair_of(config.center, "--center");
  const Heatmap2D h =
      make_centroid_heatmap(center, config.width, config.height, config.sigma);
  const PgmImage image = quantize(h.width(), h.height(), h.values());
  std::ostringstream encoded;
  write_pgm(encoded, image,
            config.ascii ? PgmEncoding::kAscii : PgmEncoding::kBinary);
  OutputSet outputs;
  outputs.add(config.out, encoded.str());
  outputs.commit();

  const Vec2 decoded = decode_heatmap(read_heatmap_pgm(config.out));
  nlohmann::json j = {{"file", config.out.string()},
                      {"center", {center.x(), center.y()}},
                      {"decoded", {decoded.x(), decoded.y()}}};
  out << j.dump(2) << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "evaluate") {
      cmd_evaluate(config, out);
    } else if (config.command == "align") {
      cmd_align(config, out);
    } else if (config.command == "lift") {
      cmd_lift(config, out);
    } else if (config.command == "selfcheck") {
      cmd_selfcheck(config, out);
    } else if (config.command == "heatmap") {
      cmd_heatmap(config, out);
    } else {
      err << "error: unknown command '" << config.command << "'\n";
      return kExitInput;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kInvalidInput:
        return kExitInput;
      case ErrorKind::kUnresolved:
        return kExitUnresolved;
      case ErrorKind::kDegenerate:
        return kExitDegenerate;
    }
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

int main_with_args(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"posekit: 6D pose geometry and evaluation toolkit"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Output path");
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_flag("--verbose", config.verbose, "Print intermediate values");
  };

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "ADD/ADI, 2D projection and AUC report");
  add_common(evaluate);
  evaluate->add_option("--records", config.records, "JSON-lines pose records")
      ->required();
  evaluate->add_option("--meshes", config.meshes,
                       "Directory of <id>.obj / <id>.ply meshes")
      ->required();
  evaluate->add_option("--intrinsics", config.intrinsics, "Intrinsics JSON")
      ->required();
  evaluate->add_option("--symmetry", config.symmetry, "Symmetry table JSON");
  evaluate->add_option("--add-fraction", config.add_fraction,
                       "ADD/ADI threshold as a fraction of the diameter");
  evaluate->add_option("--proj-threshold", config.proj_threshold,
                       "2D projection threshold in pixels");
  evaluate->add_option("--auc-max", config.auc_max,
                       "AUC maximum threshold in meters");
  evaluate->add_option("--subsample", config.subsample,
                       "ADI vertex subsample size for large meshes (0 = exact)");
  evaluate->add_flag("--reorthonormalize", config.reorthonormalize,
                     "Project record rotations onto SO(3)");
  evaluate->add_flag("--no-recenter", config.no_recenter,
                     "Keep mesh coordinates as stored");

  CLI::App* align = app.add_subcommand("align", "Procrustes alignment");
  add_common(align);
  align->add_option("--reconstructed", config.reconstructed,
                    "CSV points (x,y,z) of the reconstructed set")
      ->required();
  align->add_option("--canonical", config.canonical,
                    "CSV points (x,y,z) of the canonical set")
      ->required();
  align->add_flag("--no-recenter", config.no_recenter,
                  "Require already centered inputs");

  CLI::App* lift = app.add_subcommand("lift", "Lift an allocentric rotation to a 6D pose");
  add_common(lift);
  lift->add_option("--allocentric", config.allocentric,
                   "Rotation, 9 numbers row-major")
      ->delimiter(',')
      ->expected(9);
  lift->add_option("--allocentric-file", config.allocentric_file,
                   "Rotation JSON file");
  lift->add_option("--centroid", config.centroid, "Centroid pixel u,v")
      ->delimiter(',')
      ->expected(2)
      ->required();
  lift->add_option("--roi-offset", config.roi_offset,
                   "ROI origin ox,oy when the centroid is ROI-relative")
      ->delimiter(',')
      ->expected(2);
  lift->add_option("--mask", config.mask, "Mask PGM");
  lift->add_option("--mask-threshold", config.mask_threshold);
  lift->add_option("--diagonal", config.diagonal, "Observed box diagonal in px");
  lift->add_option("--intrinsics", config.intrinsics, "Intrinsics JSON")
      ->required();
  lift->add_option("--mesh", config.mesh, "Object mesh")->required();
  lift->add_option("--reference-distance", config.reference_distance,
                   "Initial render distance in meters");
  lift->add_option("--refine-iterations", config.refine_iterations);
  lift->add_flag("--principal-axis", config.principal_axis,
                 "Render the reference on the principal axis");
  lift->add_flag("--reorthonormalize", config.reorthonormalize);
  lift->add_flag("--no-recenter", config.no_recenter);

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "Reconstruction-quality vs pose-error study");
  add_common(selfcheck);
  selfcheck->add_option("--mesh", config.mesh, "Canonical mesh")->required();
  selfcheck->add_option("--trials", config.trials, "Trials per noise level");
  selfcheck->add_option("--bins", config.bins);
  selfcheck->add_option("--scale-spread", config.scale_spread,
                        "Per-trial log-uniform noise scale spread");
  selfcheck->add_option("--scales", config.scales,
                        "Noise levels as fractions of the diameter")
      ->delimiter(',');
  selfcheck->add_option("--noise", config.noise_kind,
                        "gaussian-per-vertex | low-frequency-smooth | "
                        "dropout-outlier");

  CLI::App* heatmap = app.add_subcommand("heatmap", "Write a centroid heatmap PGM");
  add_common(heatmap);
  heatmap->add_option("--center", config.center, "Center x,y in pixels")
      ->delimiter(',')
      ->expected(2)
      ->required();
  heatmap->add_option("--width", config.width);
  heatmap->add_option("--height", config.height);
  heatmap->add_option("--sigma", config.sigma);
  heatmap->add_flag("--ascii", config.ascii, "Write P2 instead of P5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  for (CLI::App* sub : app.get_subcommands()) config.command = sub->get_name();
  return run(config, out, err);
}

}  // namespace posekit::cli
