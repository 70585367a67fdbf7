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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"
#include "posekit/image.hpp"
#include "posekit/lift.hpp"
#include "posekit/mesh_io.hpp"
#include "posekit/metrics.hpp"
#include "posekit/serialization.hpp"
#include "test_util.hpp"

namespace posekit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "posekit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string mesh_to_obj(const Mesh& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const Vec3& v : m.vertices()) {
    os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const Face& f : m.faces()) {
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  return os.str();
}

std::string json_row_major(const Rotation& r) {
  std::ostringstream os;
  os << std::setprecision(17) << '[';
  for (int i = 0; i < 9; ++i) os << (i ? "," : "") << r.matrix()(i / 3, i % 3);
  os << ']';
  return os.str();
}

std::string record_line(const std::string& id, const Pose6D& gt, const Pose6D& pred) {
  std::ostringstream os;
  os << std::setprecision(17);
  auto pose = [&](const Pose6D& p) {
    std::ostringstream ps;
    ps << std::setprecision(17) << "{\"R\": " << json_row_major(p.rotation)
       << ", \"t\": [" << p.translation.x() << ',' << p.translation.y() << ','
       << p.translation.z() << "]}";
    return ps.str();
  };
  os << "{\"id\": \"" << id << "\", \"gt\": " << pose(gt) << ", \"pred\": "
     << pose(pred) << "}\n";
  return os.str();
}

constexpr const char* kIntrinsicsJson =
    R"({"fx": 572.4114, "fy": 573.57043, "cx": 325.2611, "cy": 242.04899, "width": 640, "height": 480})";

class CliTest : public ::testing::Test {
 protected:
  CliTest() : dir_("cli") {
    fs::create_directories(dir_ / "meshes");
    testing::write_file(dir_ / "meshes" / "ape.obj", testing::kCubeObj);
    testing::write_file(dir_ / "meshes" / "eggbox.obj",
                        mesh_to_obj(testing::ellipsoid(Vec3(0.05, 0.04, 0.03))));
    testing::write_file(dir_ / "K.json", kIntrinsicsJson);
    testing::write_file(dir_ / "sym.json", R"({"eggbox": true, "ape": false})");
    testing::write_file(dir_ / "blob.obj",
                        mesh_to_obj(testing::ellipsoid(Vec3(0.05, 0.035, 0.025))));
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // 20 records over two objects with small seeded pose errors.
  std::string mixed_records() const {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> n(0.0, 0.01);
    std::string text;
    for (int i = 0; i < 20; ++i) {
      Pose6D gt{testing::random_rotation(rng), Vec3(n(rng), n(rng), 5.0 + n(rng))};
      Pose6D pred{gt.rotation * testing::rot_about(testing::random_unit(rng),
                                                   std::abs(n(rng)) * 5),
                  gt.translation + Vec3(n(rng), n(rng), n(rng))};
      text += record_line(i % 2 ? "ape" : "eggbox", gt, pred);
    }
    return text;
  }

  std::vector<std::string> evaluate_args(const std::string& records) const {
    return {"evaluate", "--records", records, "--meshes", path("meshes"),
            "--intrinsics", path("K.json"), "--symmetry", path("sym.json")};
  }

  testing::TempDir dir_;
};

TEST_F(CliTest, EvaluatePerfectPredictions) {
  std::mt19937_64 rng(1);
  std::string text;
  for (int i = 0; i < 4; ++i) {
    const Pose6D p{testing::random_rotation(rng), Vec3(0, 0, 5.0)};
    text += record_line(i % 2 ? "ape" : "eggbox", p, p);
  }
  testing::write_file(dir_ / "perfect.jsonl", text);
  auto args = evaluate_args(path("perfect.jsonl"));
  args.insert(args.end(), {"--out", path("report")});
  const Outcome o = run_cli(args);
  ASSERT_EQ(o.code, 0) << o.err;
  const json report = json::parse(testing::read_file(dir_ / "report.json"));
  for (const json& obj : report["objects"]) {
    EXPECT_EQ(obj["add_accuracy"].get<double>(), 1.0);
    EXPECT_EQ(obj["proj2d_accuracy"].get<double>(), 1.0);
    EXPECT_EQ(obj["auc"].get<double>(), 1.0);
  }
  EXPECT_EQ(testing::read_file(dir_ / "report.txt"), o.out);
  EXPECT_NE(o.out.find("eggbox*"), std::string::npos);
  EXPECT_NE(o.out.find("100.00"), std::string::npos);
}

TEST_F(CliTest, EvaluateMatchesLibraryAggregate) {
  const std::string text = mixed_records();
  testing::write_file(dir_ / "mixed.jsonl", text);
  auto args = evaluate_args(path("mixed.jsonl"));
  args.insert(args.end(), {"--out", path("mixed.json")});
  const Outcome o = run_cli(args);
  ASSERT_EQ(o.code, 0) << o.err;

  std::istringstream in(text);
  const auto records = read_records(in, parse_intrinsics(kIntrinsicsJson));
  ASSERT_EQ(records.size(), 20u);
  const std::map<std::string, Mesh> meshes = {
      {"ape", center_mesh(load_mesh_file(dir_ / "meshes" / "ape.obj"))},
      {"eggbox", center_mesh(load_mesh_file(dir_ / "meshes" / "eggbox.obj"))}};
  const MetricsReport oracle = aggregate(records, meshes, {{"eggbox", true}});
  EXPECT_EQ(testing::read_file(dir_ / "mixed.json"), report_to_json(oracle));
  EXPECT_EQ(testing::read_file(dir_ / "mixed.txt"), report_to_text(oracle));
}

TEST_F(CliTest, EvaluateErrors) {
  testing::write_file(dir_ / "empty.jsonl", "");
  auto args = evaluate_args(path("empty.jsonl"));
  args.insert(args.end(), {"--out", path("bad")});
  EXPECT_EQ(run_cli(args).code, 2);
  EXPECT_FALSE(fs::exists(dir_ / "bad.json"));
  EXPECT_FALSE(fs::exists(dir_ / "bad.txt"));

  testing::write_file(dir_ / "broken.jsonl", mixed_records() + "{oops\n");
  const Outcome broken = run_cli(evaluate_args(path("broken.jsonl")));
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find(":21:"), std::string::npos) << broken.err;

  const Pose6D p{Rotation(), Vec3(0, 0, 5)};
  testing::write_file(dir_ / "unknown.jsonl", record_line("cat", p, p));
  auto unknown = evaluate_args(path("unknown.jsonl"));
  unknown.insert(unknown.end(), {"--out", path("unknown")});
  EXPECT_EQ(run_cli(unknown).code, 3);
  EXPECT_FALSE(fs::exists(dir_ / "unknown.json"));

  EXPECT_EQ(run_cli(evaluate_args(path("missing.jsonl"))).code, 3);
  auto bad_threshold = evaluate_args(path("unknown.jsonl"));
  bad_threshold.insert(bad_threshold.end(), {"--add-fraction", "-1"});
  EXPECT_EQ(run_cli(bad_threshold).code, 2);
}

TEST_F(CliTest, EvaluateIsDeterministic) {
  testing::write_file(dir_ / "mixed.jsonl", mixed_records());
  auto a = evaluate_args(path("mixed.jsonl"));
  auto b = a;
  a.insert(a.end(), {"--out", path("a")});
  b.insert(b.end(), {"--out", path("b")});
  ASSERT_EQ(run_cli(a).code, 0);
  ASSERT_EQ(run_cli(b).code, 0);
  EXPECT_EQ(testing::read_file(dir_ / "a.json"), testing::read_file(dir_ / "b.json"));
  EXPECT_EQ(testing::read_file(dir_ / "a.txt"), testing::read_file(dir_ / "b.txt"));
}

std::string points_csv(const std::vector<Vec3>& pts) {
  std::ostringstream os;
  os << std::setprecision(17) << "x,y,z\n";
  for (const Vec3& p : pts) os << p.x() << ',' << p.y() << ',' << p.z() << '\n';
  return os.str();
}

TEST_F(CliTest, Align) {
  const auto pts = testing::random_cloud(30, 4);
  testing::write_file(dir_ / "a.csv", points_csv(pts));
  const Outcome same =
      run_cli({"align", "--reconstructed", path("a.csv"), "--canonical", path("a.csv")});
  ASSERT_EQ(same.code, 0) << same.err;
  const json j = json::parse(same.out);
  for (int i = 0; i < 9; ++i) {
    EXPECT_NEAR(j["R"][i].get<double>(), i % 4 == 0 ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_NEAR(j["residual"].get<double>(), 0.0, 1e-15);

  const Rotation rz = testing::rot_z(std::numbers::pi / 2);
  testing::write_file(dir_ / "b.csv", points_csv(testing::rotate_points(rz, pts)));
  const Outcome turned =
      run_cli({"align", "--reconstructed", path("b.csv"), "--canonical", path("a.csv")});
  ASSERT_EQ(turned.code, 0) << turned.err;
  const json jt = json::parse(turned.out);
  for (int i = 0; i < 9; ++i) {
    EXPECT_NEAR(jt["R"][i].get<double>(), rz.matrix()(i / 3, i % 3), 1e-9);
  }

  testing::write_file(dir_ / "short.csv",
                      points_csv({pts.begin(), pts.begin() + 10}));
  EXPECT_EQ(run_cli({"align", "--reconstructed", path("short.csv"), "--canonical",
                     path("a.csv")})
                .code,
            2);
  testing::write_file(dir_ / "line.csv",
                      points_csv({Vec3(0, 0, 0), Vec3(1, 1, 1), Vec3(2, 2, 2)}));
  EXPECT_EQ(run_cli({"align", "--reconstructed", path("line.csv"), "--canonical",
                     path("line.csv")})
                .code,
            4);
}

TEST_F(CliTest, LiftOnAxis) {
  const Mesh mesh = center_mesh(load_mesh_file(dir_ / "blob.obj"));
  const CameraIntrinsics k = parse_intrinsics(kIntrinsicsJson);
  const Rotation ra = testing::rot_about(Vec3(1, 1, 0), 0.5);
  const double diag = projected_bbox_diagonal(k, mesh, ra, 0.8);
  std::ostringstream d;
  d << std::setprecision(17) << diag;
  std::ostringstream c;
  c << std::setprecision(17) << k.cx << ',' << k.cy;
  const std::string rot = json_row_major(ra);
  const Outcome o = run_cli({"lift", "--allocentric", rot.substr(1, rot.size() - 2),
                             "--centroid", c.str(), "--diagonal", d.str(),
                             "--intrinsics", path("K.json"), "--mesh", path("blob.obj"),
                             "--reference-distance", "0.8", "--verbose"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_NEAR(j["t"][0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j["t"][1].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j["t"][2].get<double>(), 0.8, 1e-12);
  EXPECT_TRUE(j.contains("ray"));
  EXPECT_TRUE(j.contains("reference_diagonal"));
}

TEST_F(CliTest, LiftRoundtripWithRoiAndMask) {
  const Mesh mesh = center_mesh(load_mesh_file(dir_ / "blob.obj"));
  const CameraIntrinsics k = parse_intrinsics(kIntrinsicsJson);
  std::mt19937_64 rng(8);
  const Pose6D truth{testing::random_rotation(rng), Vec3(0.08, -0.05, 0.6)};
  const Rotation rc = rotation_to_ray(truth.translation.normalized());
  const Rotation ra = rc.inverse() * truth.rotation;
  const Vec2 centroid = project_point(k, truth.translation);
  const double diag = projected_bbox_diagonal(k, mesh, truth);
  testing::write_file(dir_ / "ra.json", json_row_major(ra));

  const Vec2 roi_origin(300.0, 200.0);
  std::ostringstream c, off, d;
  c << std::setprecision(17) << centroid.x() - roi_origin.x() << ','
    << centroid.y() - roi_origin.y();
  off << std::setprecision(17) << roi_origin.x() << ',' << roi_origin.y();
  d << std::setprecision(17) << diag;
  const Outcome o = run_cli({"lift", "--allocentric-file", path("ra.json"), "--centroid",
                             c.str(), "--roi-offset", off.str(), "--diagonal", d.str(),
                             "--intrinsics", path("K.json"), "--mesh", path("blob.obj"),
                             "--out", path("pose.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(testing::read_file(dir_ / "pose.json"), o.out);
  const json j = json::parse(o.out);
  Mat3 r;
  for (int i = 0; i < 9; ++i) r(i / 3, i % 3) = j["R"][i].get<double>();
  EXPECT_LT(geodesic_angle(Rotation::nearest(r), truth.rotation), 1e-6);
  const Vec3 t(j["t"][0].get<double>(), j["t"][1].get<double>(), j["t"][2].get<double>());
  EXPECT_LT((t - truth.translation).norm(), 0.02 * truth.translation.norm());

  // Empty mask: exit 2 with no output left behind.
  Heatmap2D blank(64, 48, 0.1);
  write_heatmap_pgm(dir_ / "blank.pgm", blank);
  const Outcome empty = run_cli({"lift", "--allocentric-file", path("ra.json"),
                                 "--centroid", "320,240", "--mask", path("blank.pgm"),
                                 "--intrinsics", path("K.json"), "--mesh",
                                 path("blob.obj"), "--out", path("empty_pose.json")});
  EXPECT_EQ(empty.code, 2);
  EXPECT_FALSE(fs::exists(dir_ / "empty_pose.json"));

  // A filled mask gives a usable diagonal.
  Heatmap2D filled(64, 48, 0.0);
  for (int y = 10; y < 30; ++y)
    for (int x = 5; x < 40; ++x) filled.set(x, y, 1.0);
  write_heatmap_pgm(dir_ / "filled.pgm", filled);
  EXPECT_EQ(run_cli({"lift", "--allocentric-file", path("ra.json"), "--centroid",
                     "320,240", "--mask", path("filled.pgm"), "--intrinsics",
                     path("K.json"), "--mesh", path("blob.obj")})
                .code,
            0);
}

TEST_F(CliTest, LiftDegenerateGeometry) {
  // Every vertex at one point: the reference box has zero extent.
  testing::write_file(dir_ / "point.obj",
                      "v 0 0 0\nv 0 0 0\nv 0 0 0\nv 0 0 0\nf 1 2 3\n");
  const Outcome o = run_cli({"lift", "--allocentric", "1,0,0,0,1,0,0,0,1",
                             "--centroid", "320,240", "--diagonal", "10",
                             "--intrinsics", path("K.json"), "--mesh",
                             path("point.obj"), "--reference-distance", "1"});
  EXPECT_EQ(o.code, 4) << o.err;
}

TEST_F(CliTest, SelfcheckDeterministicAndValidated) {
  const std::vector<std::string> base = {"selfcheck", "--mesh", path("blob.obj"),
                                         "--seed", "7", "--trials", "100"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("study_a")});
  b.insert(b.end(), {"--out", path("study_b")});
  const Outcome oa = run_cli(a), ob = run_cli(b);
  ASSERT_EQ(oa.code, 0) << oa.err;
  ASSERT_EQ(ob.code, 0) << ob.err;
  EXPECT_EQ(oa.out, ob.out);
  EXPECT_EQ(testing::read_file(dir_ / "study_a.json"),
            testing::read_file(dir_ / "study_b.json"));
  EXPECT_EQ(testing::read_file(dir_ / "study_a.csv"),
            testing::read_file(dir_ / "study_b.csv"));
  const json j = json::parse(testing::read_file(dir_ / "study_a.json"));
  EXPECT_TRUE(j.contains("rank_correlation"));
  EXPECT_TRUE(j.contains("bins"));

  auto zero = base;
  zero[6] = "0";
  zero.insert(zero.end(), {"--out", path("study_zero")});
  EXPECT_EQ(run_cli(zero).code, 2);
  EXPECT_FALSE(fs::exists(dir_ / "study_zero.json"));
  auto bad_kind = base;
  bad_kind.insert(bad_kind.end(), {"--noise", "salt"});
  EXPECT_EQ(run_cli(bad_kind).code, 2);
}

TEST_F(CliTest, Heatmap) {
  const Outcome o = run_cli({"heatmap", "--center", "32,32", "--width", "64",
                             "--height", "64", "--sigma", "5", "--out",
                             path("h.pgm")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Heatmap2D h = read_heatmap_pgm(dir_ / "h.pgm");
  EXPECT_EQ(h.at(32, 32), 1.0);
  const json j = json::parse(o.out);
  EXPECT_NEAR(j["decoded"][0].get<double>(), 32.0, 1e-9);
  EXPECT_NEAR(j["decoded"][1].get<double>(), 32.0, 1e-9);

  const Outcome sub = run_cli({"heatmap", "--center", "20.3,40.6", "--ascii", "--out",
                               path("s.pgm")});
  ASSERT_EQ(sub.code, 0) << sub.err;
  const Heatmap2D written = read_heatmap_pgm(dir_ / "s.pgm");
  const Heatmap2D exact = make_centroid_heatmap(Vec2(20.3, 40.6), 64, 64);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      EXPECT_LE(std::abs(written.at(x, y) - exact.at(x, y)), 0.5 / 65535 + 1e-15);
  const json js = json::parse(sub.out);
  EXPECT_LT(std::hypot(js["decoded"][0].get<double>() - 20.3,
                       js["decoded"][1].get<double>() - 40.6),
            0.5);

  EXPECT_EQ(run_cli({"heatmap", "--center", "3,3", "--sigma", "0", "--out",
                     path("z.pgm")})
                .code,
            2);
  EXPECT_FALSE(fs::exists(dir_ / "z.pgm"));
}

TEST(CliParse, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"align", "--reconstructed", "x.csv"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

}  // namespace
}  // namespace posekit
