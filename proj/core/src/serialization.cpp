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

#include "posekit/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "posekit/error.hpp"

namespace posekit {
namespace {

using nlohmann::json;

json rotation_json(const Rotation& r) {
  const auto v = r.row_major();
  return json(std::vector<double>(v.begin(), v.end()));
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json pose_json(const Pose6D& p) {
  return {{"R", rotation_json(p.rotation)}, {"t", vec_json(p.translation)}};
}

std::vector<double> numbers(const json& j, std::size_t count,
                            const std::string& what) {
  if (!j.is_array() || j.size() != count) {
    throw_invalid(what + " must be an array of " + std::to_string(count) +
                  " numbers");
  }
  std::vector<double> out;
  for (const json& x : j) {
    if (!x.is_number()) throw_invalid(what + " must contain only numbers");
    const double v = x.get<double>();
    if (!std::isfinite(v)) throw_invalid(what + " contains a non-finite value");
    out.push_back(v);
  }
  return out;
}

Rotation rotation_from(const json& j, const std::string& what, double tolerance,
                       bool reorthonormalize) {
  const std::vector<double> v = numbers(j, 9, what);
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = v[3 * r + c];
  if (!reorthonormalize) {
    const double err = orthonormality_error(m);
    if (err > tolerance) {
      std::ostringstream os;
      os << what << " is not a rotation (orthonormality error " << err
         << " > " << tolerance << ")";
      throw_invalid(os.str());
    }
  }
  return Rotation::nearest(m);
}

Pose6D pose_from(const json& j, const std::string& what,
                 const RecordReadOptions& options) {
  if (!j.is_object() || !j.contains("R") || !j.contains("t")) {
    throw_invalid(what + " must be an object with \"R\" and \"t\"");
  }
  const std::vector<double> t = numbers(j.at("t"), 3, what + ".t");
  return {rotation_from(j.at("R"), what + ".R", options.rotation_tolerance,
                        options.reorthonormalize),
          Vec3(t[0], t[1], t[2])};
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw_invalid(std::string("intrinsics field \"") + key +
                  "\" is missing or not a number");
  }
  return j.at(key).get<double>();
}

CameraIntrinsics intrinsics_from(const json& j) {
  if (!j.is_object()) throw_invalid("intrinsics must be a JSON object");
  CameraIntrinsics k;
  k.fx = number_field(j, "fx");
  k.fy = number_field(j, "fy");
  k.cx = number_field(j, "cx");
  k.cy = number_field(j, "cy");
  const double w = number_field(j, "width");
  const double h = number_field(j, "height");
  if (w != std::floor(w) || h != std::floor(h)) {
    throw_invalid("intrinsics width/height must be integers");
  }
  k.width = static_cast<int>(w);
  k.height = static_cast<int>(h);
  k.validate();
  return k;
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_invalid(what + ": " + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kUnresolved, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json bins_json(const std::vector<StudyBin>& bins) {
  json out = json::array();
  for (const StudyBin& b : bins) {
    out.push_back({{"lower", b.lower},
                   {"upper", b.upper},
                   {"mean_pose_loss", b.mean_pose_loss},
                   {"count", b.count}});
  }
  return out;
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json object_metrics_json(const ObjectMetrics& m) {
  return {{"id", m.object_id},
          {"symmetric", m.symmetric},
          {"count", m.count},
          {"diameter", m.diameter},
          {"add_accuracy", m.add_accuracy},
          {"proj2d_accuracy", m.proj2d_accuracy},
          {"auc", m.auc},
          {"mean_distance", m.mean_distance},
          {"mean_proj2d_error", m.mean_proj2d_error}};
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

}  // namespace

std::string rotation_to_json(const Rotation& r) {
  return rotation_json(r).dump();
}

std::string pose_to_json(const Pose6D& pose) { return pose_json(pose).dump(); }

Rotation parse_rotation_json(std::string_view text, double tolerance,
                             bool reorthonormalize) {
  json j = parse_json(text, "rotation");
  if (j.is_object() && j.contains("R")) j = j.at("R");
  return rotation_from(j, "rotation", tolerance, reorthonormalize);
}

std::vector<EvalRecord> read_records(std::istream& in,
                                     const CameraIntrinsics& default_intrinsics,
                                     const RecordReadOptions& options,
                                     const std::string& source) {
  std::vector<EvalRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!j.is_object()) throw_invalid("record must be a JSON object");
      if (!j.contains("id") || !j.at("id").is_string()) {
        throw_invalid("record needs a string \"id\"");
      }
      if (!j.contains("gt") || !j.contains("pred")) {
        throw_invalid("record needs \"gt\" and \"pred\" poses");
      }
      EvalRecord rec;
      rec.object_id = j.at("id").get<std::string>();
      rec.groundtruth = pose_from(j.at("gt"), "gt", options);
      rec.predicted = pose_from(j.at("pred"), "pred", options);
      rec.intrinsics =
          j.contains("K") ? intrinsics_from(j.at("K")) : default_intrinsics;
      records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw ParseError(lineno, e.what(), source);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what(), source);
    }
  }
  if (records.empty()) {
    throw_invalid((source.empty() ? std::string("records") : source) +
                  ": no records");
  }
  return records;
}

CameraIntrinsics parse_intrinsics(std::string_view text) {
  return intrinsics_from(parse_json(text, "intrinsics"));
}

CameraIntrinsics read_intrinsics_file(const std::filesystem::path& path) {
  try {
    return parse_intrinsics(slurp(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kUnresolved) throw;
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

SymmetryTable parse_symmetry_table(std::string_view text) {
  const json j = parse_json(text, "symmetry table");
  if (!j.is_object()) throw_invalid("symmetry table must be a JSON object");
  SymmetryTable table;
  for (const auto& [id, value] : j.items()) {
    if (value.is_boolean()) {
      table.symmetric[id] = value.get<bool>();
      continue;
    }
    if (!value.is_object()) {
      throw_invalid("symmetry entry '" + id + "' must be a boolean or object");
    }
    SymmetrySpec spec;
    if (value.contains("axis")) {
      const std::vector<double> a = numbers(value.at("axis"), 3, id + ".axis");
      const Vec3 axis(a[0], a[1], a[2]);
      if (!(axis.norm() > 0.0)) throw_invalid(id + ".axis is zero");
      spec.axis = axis.normalized();
    }
    if (value.contains("order")) {
      if (!value.at("order").is_number_integer()) {
        throw_invalid(id + ".order must be an integer");
      }
      spec.order = value.at("order").get<int>();
    }
    if (value.contains("continuous")) {
      spec.continuous = value.at("continuous").get<bool>();
    }
    if (value.contains("samples")) spec.samples = value.at("samples").get<int>();
    spec.validate();
    table.specs[id] = spec;
    table.symmetric[id] = spec.is_symmetric();
  }
  return table;
}

SymmetryTable read_symmetry_file(const std::filesystem::path& path) {
  try {
    return parse_symmetry_table(slurp(path));
  } catch (const json::exception& e) {
    throw_invalid(path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kUnresolved) throw;
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<Vec3> read_points_csv(std::istream& in, const std::string& source) {
  std::vector<Vec3> points;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos ||
        line.front() == '#') {
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool ok = true;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      try {
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        ok = false;
        break;
      }
    }
    if (!ok && first) {
      first = false;
      continue;  // header
    }
    first = false;
    if (!ok || row.size() != 3) {
      throw ParseError(lineno, "expected three comma-separated numbers",
                       source);
    }
    const Vec3 p(row[0], row[1], row[2]);
    if (!p.allFinite()) throw ParseError(lineno, "non-finite coordinate", source);
    points.push_back(p);
  }
  return points;
}

std::string report_to_json(const MetricsReport& report) {
  json objects = json::array();
  for (const ObjectMetrics& m : report.objects) {
    objects.push_back(object_metrics_json(m));
  }
  json out = {{"thresholds",
               {{"add_fraction", report.thresholds.add_fraction},
                {"proj_px", report.thresholds.proj_px},
                {"auc_max", report.thresholds.auc_max}}},
              {"objects", objects},
              {"average", object_metrics_json(report.average)}};
  out["average"].erase("symmetric");
  out["average"].erase("diameter");
  return out.dump(2) + "\n";
}

std::string report_to_text(const MetricsReport& report) {
  std::size_t name_width = std::string("Average").size();
  for (const ObjectMetrics& m : report.objects) {
    name_width = std::max(name_width, m.object_id.size() + 1);
  }
  std::ostringstream os;
  auto row = [&](const std::string& name, const std::string& a,
                 const std::string& b, const std::string& c,
                 const std::string& n) {
    os << std::left << std::setw(static_cast<int>(name_width)) << name
       << std::right << std::setw(10) << a << std::setw(10) << b
       << std::setw(10) << c << std::setw(8) << n << '\n';
  };
  const std::string rule(name_width + 38, '-');
  row("Object", "ADD/ADI", "2D Proj.", "AUC", "N");
  os << rule << '\n';
  for (const ObjectMetrics& m : report.objects) {
    row(m.object_id + (m.symmetric ? "*" : ""), percent(m.add_accuracy),
        percent(m.proj2d_accuracy), percent(m.auc), std::to_string(m.count));
  }
  os << rule << '\n';
  const ObjectMetrics& a = report.average;
  row(a.object_id, percent(a.add_accuracy), percent(a.proj2d_accuracy),
      percent(a.auc), std::to_string(a.count));
  os << "\n* symmetric object, ADI instead of ADD. Accuracies in percent; "
        "ADD/ADI < "
     << percent(report.thresholds.add_fraction)
     << "% of diameter, 2D projection < " << report.thresholds.proj_px
     << " px, AUC up to " << report.thresholds.auc_max << " m.\n";
  return os.str();
}

std::string study_to_json(const CorrelationStudy& study) {
  json sweep = json::array();
  for (const NoiseModel& m : study.config.sweep) {
    sweep.push_back({{"kind", std::string(to_string(m.kind))},
                     {"scale", m.scale},
                     {"seed", m.seed}});
  }
  std::size_t monotone = count_monotone_pairs(study.bins);
  json out = {
      {"trials_per_level", study.config.trials},
      {"bin_count", study.config.bins},
      {"scale_spread", study.config.scale_spread},
      {"sweep", sweep},
      {"samples", study.samples.size()},
      {"rank_correlation", optional_json(study.rank_correlation)},
      {"monotone_pairs", monotone},
      {"bins", bins_json(study.bins)},
      {"residual_rank_correlation",
       optional_json(study.residual_rank_correlation)},
      {"residual_monotone_pairs", count_monotone_pairs(study.residual_bins)},
      {"residual_bins", bins_json(study.residual_bins)},
  };
  return out.dump(2) + "\n";
}

std::string study_to_csv(const CorrelationStudy& study) {
  std::ostringstream os;
  os << "level,trial,seed,noise_scale,vertex_loss,standardized_vertex_loss,"
        "pose_loss,residual,standardized_residual\n";
  os << std::setprecision(17);
  for (const StudySample& s : study.samples) {
    os << s.level << ',' << s.trial << ',' << s.seed << ',' << s.noise_scale
       << ',' << s.vertex_loss << ',' << s.standardized_vertex_loss << ','
       << s.pose_loss << ',' << s.residual << ',' << s.standardized_residual
       << '\n';
  }
  return os.str();
}

std::string lift_to_json(const LiftResult& result, bool verbose) {
  json out = pose_json(result.pose);
  if (verbose) {
    out["ray"] = vec_json(result.ray);
    out["ray_rotation"] = rotation_json(result.ray_rotation);
    out["reference_distance"] = result.reference_distance;
    out["reference_diagonal"] = result.reference_diagonal;
    out["distance"] = result.distance;
    out["refine_iterations"] = result.iterations;
  }
  return out.dump(2) + "\n";
}

}  // namespace posekit
