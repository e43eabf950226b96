// Copyright 2026 The Pose Forge Authors.
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

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "pose_forge/core/error.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/fragments/fragments.h"
#include "pose_forge/fragments/prediction_maps.h"
#include "pose_forge/harness/commands.h"
#include "pose_forge/harness/ply.h"
#include "pose_forge/harness/results_io.h"
#include "pose_forge/harness/scene_io.h"
#include "pose_forge/harness/symmetry_io.h"
#include "test_support.h"

namespace pose_forge {
namespace {

using testing::TempDir;
using testing::ToyDatasetDir;

template <typename Fn>
ErrorCode CodeOf(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kInvalidArgument;
}

// ------------------------------------------------------------------ PLY

TEST(Ply, RoundTripsBothFormats) {
  TriangleMesh mesh = MakePrism(7, 12.5, 33.0);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    mesh.normals.push_back(mesh.vertices[i].normalized());
  }
  for (PlyFormat format : {PlyFormat::kAscii, PlyFormat::kBinaryLittleEndian}) {
    std::stringstream buffer;
    WritePly(buffer, mesh, format);
    const TriangleMesh back = ParsePly(buffer.str());
    EXPECT_EQ(back.vertices, mesh.vertices);
    EXPECT_EQ(back.normals, mesh.normals);
    EXPECT_EQ(back.triangles, mesh.triangles);
  }
}

TEST(Ply, ParsesHandWrittenQuadAndSkipsColors) {
  const std::string text =
      "ply\nformat ascii 1.0\ncomment made by hand\n"
      "element vertex 4\nproperty float x\nproperty float y\nproperty float z\n"
      "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
      "0 0 0 255 0 0\n1 0 0 0 255 0\n1 1 0 0 0 255\n0 1 0 1 1 1\n4 0 1 2 3\n";
  const TriangleMesh mesh = ParsePly(text);
  ASSERT_EQ(mesh.vertices.size(), 4u);
  ASSERT_EQ(mesh.triangles.size(), 2u);  // fan
  EXPECT_EQ(mesh.triangles[1], (std::array<int, 3>{0, 2, 3}));
}

TEST(Ply, CorruptedInputReportsByteOffset) {
  std::stringstream buffer;
  WritePly(buffer, MakeCube(10.0), PlyFormat::kBinaryLittleEndian);
  const std::string good = buffer.str();
  std::vector<std::string> bad = {
      "",
      "plx\n",
      "ply\nformat ascii 1.0\nelement vertex 2\nproperty float x\nproperty float y\n"
      "property float z\nend_header\n1 2 3\n",
      "ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\nproperty float y\n"
      "property float z\nend_header\n1 2 abc\n",
      good.substr(0, good.size() - 3),
      good.substr(0, good.find("end_header")),
  };
  std::string out_of_range = good;
  // Corrupt the first face index (last 12 bytes hold the final face).
  out_of_range[out_of_range.size() - 4] = '\x7f';
  bad.push_back(out_of_range);
  for (std::size_t k = 0; k < bad.size(); ++k) {
    try {
      ParsePly(bad[k]);
      ADD_FAILURE() << "case " << k;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.unit(), ParseError::Unit::kByteOffset);
      EXPECT_GE(e.position(), 0);
      EXPECT_LE(e.position(), static_cast<std::int64_t>(bad[k].size()));
    } catch (const Error& e) {
      // Index validation happens after parsing.
      EXPECT_EQ(k, bad.size() - 1) << e.what();
    }
  }
}

TEST(Ply, MissingCoordinateIsUnsupported) {
  EXPECT_EQ(CodeOf([] {
              ParsePly("ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\n"
                       "end_header\n1\n");
            }),
            ErrorCode::kUnsupportedElement);
  EXPECT_EQ(CodeOf([] {
              ParsePly("ply\nformat binary_big_endian 1.0\nelement vertex 0\n"
                       "property float x\nproperty float y\nproperty float z\nend_header\n");
            }),
            ErrorCode::kUnsupportedElement);
}

TEST(Ply, RandomBytesNeverCrash) {
  std::stringstream buffer;
  WritePly(buffer, MakeCube(10.0), PlyFormat::kBinaryLittleEndian);
  const std::string good = buffer.str();
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s = good;
    for (int k = 0; k < 4; ++k) s[rng() % s.size()] = static_cast<char>(rng());
    try {
      ParsePly(s);
    } catch (const Error&) {
    }
  }
}

// ----------------------------------------------------------- scene files

constexpr char kGt[] = R"({
  "0": [{"obj_id": 1, "cam_R_m2c": [1,0,0, 0,1,0, 0,0,1], "cam_t_m2c": [0,0,1000]},
        {"obj_id": 2, "cam_R_m2c": [0,-1,0, 1,0,0, 0,0,1], "cam_t_m2c": [10,0,900],
         "visib_fract": 0.4},
        {"obj_id": 1, "cam_R_m2c": [1,0,0, 0,1,0, 0,0,1], "cam_t_m2c": [50,0,1200]}],
  "3": [{"obj_id": 1, "cam_R_m2c": [1,0,0, 0,1,0, 0,0,1], "cam_t_m2c": [0,0,800]},
        {"obj_id": 1, "cam_R_m2c": [1,0,0, 0,1,0, 0,0,1], "cam_t_m2c": [0,9,800]},
        {"obj_id": 2, "cam_R_m2c": [1,0,0, 0,1,0, 0,0,1], "cam_t_m2c": [0,0,700]}]
})";
constexpr char kCamera[] = R"({
  "3": {"cam_K": [1000,0,319.5, 0,1000,239.5, 0,0,1], "depth_scale": 0.1,
        "width": 640, "height": 480},
  "0": {"cam_K": [1000,0,319.5, 0,1000,239.5, 0,0,1], "depth_scale": 1.0,
        "width": 640, "height": 480}
})";

TEST(SceneIo, ParsesImagesAndInstances) {
  const std::vector<SceneRecord> records = ParseScene(kGt, kCamera, 7);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].image_id, 0);
  EXPECT_EQ(records[1].image_id, 3);
  EXPECT_EQ(records[0].scene_id, 7);
  ASSERT_EQ(records[0].instances.size(), 3u);
  ASSERT_EQ(records[1].instances.size(), 3u);
  EXPECT_EQ(records[0].instances[1].object_id, 2);
  EXPECT_DOUBLE_EQ(records[0].instances[1].visible_fraction, 0.4);
  EXPECT_DOUBLE_EQ(records[1].depth_scale, 0.1);
  EXPECT_EQ(records[0].instances[2].pose.translation, Eigen::Vector3d(50, 0, 1200));
}

TEST(SceneIo, RoundTripThroughFiles) {
  TempDir dir("scene");
  const std::vector<SceneRecord> records = ParseScene(kGt, kCamera, 2);
  WriteScene(records, dir.File("gt.json"), dir.File("cam.json"));
  const std::vector<SceneRecord> back = LoadScene(dir.File("gt.json"), dir.File("cam.json"), 2);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].camera.fx, records[i].camera.fx);
    for (std::size_t k = 0; k < back[i].instances.size(); ++k) {
      EXPECT_EQ(back[i].instances[k].pose.rotation, records[i].instances[k].pose.rotation);
      EXPECT_EQ(back[i].instances[k].visible_fraction, records[i].instances[k].visible_fraction);
    }
  }
}

TEST(SceneIo, RejectsBadInput) {
  const std::string skewed = R"({"0": [{"obj_id": 1, "cam_R_m2c": [1,0.01,0, 0,1,0, 0,0,1],
                                       "cam_t_m2c": [0,0,1]}]})";
  EXPECT_EQ(CodeOf([&] { ParseScene(skewed, kCamera, 1); }), ErrorCode::kValidationError);
  const std::string missing = R"({"0": [{"obj_id": 1, "cam_t_m2c": [0,0,1]}]})";
  EXPECT_EQ(CodeOf([&] { ParseScene(missing, kCamera, 1); }), ErrorCode::kMissingField);
  try {
    ParseScene("{\"0\": [", kCamera, 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.unit(), ParseError::Unit::kByteOffset);
    EXPECT_GT(e.position(), 0);
  }
  EXPECT_EQ(PaddedId(42), "000042");
  EXPECT_EQ(ModelPath("d", 3), "d/models/obj_000003.ply");
}

// -------------------------------------------------------------- results

std::vector<ResultRecord> RandomRecords(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1e4, 1e4), s(0.0, 1.0);
  std::vector<ResultRecord> out;
  for (int i = 0; i < n; ++i) {
    ResultRecord r;
    r.scene_id = rng() % 50;
    r.image_id = rng() % 1000;
    r.object_id = 1 + rng() % 30;
    r.score = s(rng);
    r.pose.rotation = testing::RandomRotation(rng);
    r.pose.translation = {u(rng), u(rng), u(rng)};
    r.time = s(rng) * 10;
    out.push_back(r);
  }
  return out;
}

TEST(ResultsIo, RoundTripIsExact) {
  std::mt19937_64 rng(2);
  const std::vector<ResultRecord> records = RandomRecords(rng, 2000);
  std::stringstream buffer;
  WriteResults(buffer, records);
  EXPECT_EQ(buffer.str().substr(0, sizeof(kResultsHeader) - 1), kResultsHeader);
  const std::vector<ResultRecord> back = ReadResults(buffer);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].score, records[i].score);
    EXPECT_EQ(back[i].pose.rotation, records[i].pose.rotation);
    EXPECT_EQ(back[i].pose.translation, records[i].pose.translation);
    EXPECT_EQ(back[i].time, records[i].time);
  }
}

TEST(ResultsIo, MalformedLinesReportLineNumber) {
  const std::string good_r = "1 0 0 0 1 0 0 0 1";
  const std::vector<std::pair<std::string, std::int64_t>> cases = {
      {"1,2,3,0.5," + good_r + ",0 0 100,1\n1,2,3,0.5,1 0 0 0 1 0 0 0,0 0 100,1\n", 2},
      {std::string(kResultsHeader) + "\n\n1,2,3,x," + good_r + ",0 0 1,0\n", 3},
      {"1,2,3,0.5," + good_r + ",0 0,0\n", 1},
      {"1,2,3,0.5," + good_r + ",0 0 1\n", 1},
      {"1,2,3,0.5," + good_r + ",0 0 1,-1\n", 1},
      {"1,2,3,0.5,2 0 0 0 1 0 0 0 1,0 0 1,0\n", 1},
  };
  for (const auto& [text, line] : cases) {
    std::istringstream in(text);
    try {
      ReadResults(in);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.unit(), ParseError::Unit::kLine);
      EXPECT_EQ(e.position(), line) << text;
    }
  }
}

TEST(ResultsIo, SortIsCanonical) {
  std::mt19937_64 rng(3);
  std::vector<ResultRecord> records = RandomRecords(rng, 500);
  SortResults(&records);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const auto ka = std::make_tuple(a.scene_id, a.image_id, a.object_id, -a.score);
    const auto kb = std::make_tuple(b.scene_id, b.image_id, b.object_id, -b.score);
    EXPECT_LE(ka, kb);
  }
}

// ------------------------------------------------------------- symmetry

TEST(SymmetryIo, RoundTripAndExpansion) {
  std::map<int, SymmetryAnnotation> table;
  SymmetryAnnotation& a = table[2];
  RigidPose flip;
  flip.rotation = Eigen::Vector3d(1, -1, -1).asDiagonal();
  a.discrete.push_back(flip);
  a.continuous.push_back({Eigen::Vector3d::UnitZ(), Eigen::Vector3d::Zero(), 8});
  const std::string text = FormatSymmetries(table);
  const auto back = ParseSymmetries(text);
  ASSERT_EQ(back.count(2), 1u);
  EXPECT_EQ(FormatSymmetries(back), text);
  const std::vector<RigidPose> expanded = ExpandSymmetries(back.at(2));
  ASSERT_EQ(expanded.size(), 16u);
  EXPECT_LT((expanded[0].rotation - Eigen::Matrix3d::Identity()).norm(), 1e-12);
  EXPECT_EQ(ExpandSymmetries(SymmetryAnnotation{}).size(), 1u);
}

TEST(SymmetryIo, RejectsBadInput) {
  EXPECT_EQ(CodeOf([] { ParseSymmetries("{\"1\": {\"discrete\": [{\"R\": [1,0,0,0,1,0,0,0,1]}]}}"); }),
            ErrorCode::kMissingField);
  EXPECT_EQ(CodeOf([] { ParseSymmetries("{\"1\": {"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] {
              ParseSymmetries(
                  "{\"1\": {\"discrete\": [{\"R\": [2,0,0,0,1,0,0,0,1], \"t\": [0,0,0]}]}}");
            }),
            ErrorCode::kValidationError);
}

// --------------------------------------------------------------- evaluation

EvalReport EvalToy(const std::string& results, bool siso = false) {
  EvalOptions options;
  options.datasets.push_back({ToyDatasetDir(), ToyDatasetDir() + "/" + results});
  options.siso = siso;
  return RunEval(options);
}

TEST(Eval, ExactResultsScorePerfectly) {
  const EvalReport report = EvalToy("results_exact.csv", true);
  ASSERT_EQ(report.datasets.size(), 1u);
  const DatasetReport& d = report.datasets[0];
  EXPECT_EQ(d.images, 4);
  EXPECT_EQ(d.instances, 4);
  EXPECT_DOUBLE_EQ(d.ar_vsd, 1.0);
  EXPECT_DOUBLE_EQ(d.ar_mssd, 1.0);
  EXPECT_DOUBLE_EQ(d.ar_mspd, 1.0);
  EXPECT_DOUBLE_EQ(report.ar_core, 1.0);
  ASSERT_TRUE(d.siso_vsd_recall.has_value());
  EXPECT_DOUBLE_EQ(*d.siso_vsd_recall, 1.0);
}

TEST(Eval, ReportIsDeterministic) {
  const std::string a = FormatReportJson(EvalToy("results_straddle.csv"));
  const std::string b = FormatReportJson(EvalToy("results_straddle.csv"));
  EXPECT_EQ(a, b);
  EXPECT_NE(FormatReportTable(EvalToy("results_straddle.csv")).find("AR_Core"),
            std::string::npos);
}

// -------------------------------------------------------------------- CLI

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun RunTool(const std::string& args, const TempDir& dir) {
  const std::string out = dir.File("stdout.txt"), err = dir.File("stderr.txt");
  const std::string cmd =
      std::string(POSE_FORGE_CLI) + " " + args + " >" + out + " 2>" + err;
  const int raw = std::system(cmd.c_str());
  CliRun run{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ReadTextFile(out), ReadTextFile(err)};
  return run;
}

TEST(Cli, ExitCodes) {
  TempDir dir("cli");
  EXPECT_EQ(RunTool("--help", dir).status, 0);
  EXPECT_EQ(RunTool("", dir).status, 2);
  EXPECT_EQ(RunTool("eval --dataset", dir).status, 2);
  EXPECT_EQ(RunTool("eval --dataset /nonexistent --results /nonexistent.csv", dir).status, 1);
  {
    std::ofstream bad(dir.File("bad.csv"));
    bad << "1,2,3\n";
  }
  const CliRun r =
      RunTool("eval --dataset " + ToyDatasetDir() + " --results " + dir.File("bad.csv"), dir);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST(Cli, EvalPrintsTable) {
  TempDir dir("cli_eval");
  const CliRun r = RunTool("eval --dataset " + ToyDatasetDir() + " --results " +
                               ToyDatasetDir() + "/results_exact.csv --report " +
                               dir.File("report.json"),
                           dir);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("1.0000"), std::string::npos);
  EXPECT_NE(ReadTextFile(dir.File("report.json")).find("ar_core"), std::string::npos);
}

TEST(Cli, SymFindsCubeRotations) {
  TempDir dir("cli_sym");
  const CliRun r = RunTool("sym --model " + ToyDatasetDir() + "/models/obj_000001.ply" +
                               " --obj-id 1 --out " + dir.File("sym.json"),
                           dir);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.err.find("24 transforms"), std::string::npos) << r.err;
  const auto table = LoadSymmetries(dir.File("sym.json"));
  EXPECT_EQ(ExpandSymmetries(table.at(1)).size(), 24u);
}

TEST(Cli, FitIsReproducible) {
  TempDir dir("cli_fit");
  const std::string dataset = ToyDatasetDir();
  const std::vector<SceneRecord> scene =
      LoadScene(SceneDir(dataset, 1) + "/scene_gt.json", SceneDir(dataset, 1) + "/scene_camera.json", 1);
  for (const SceneRecord& rec : scene) {
    for (const GroundTruthInstance& gt : rec.instances) {
      const TriangleMesh mesh = ReadPly(ModelPath(dataset, gt.object_id));
      const FragmentAtlas atlas = BuildFragmentAtlas(mesh, 8);  // toy cube: 8 vertices
      const PredictionMaps maps = testing::RenderPerfectMaps(
          mesh, atlas, gt.pose, rec.camera, 4, gt.object_id, 1, rec.image_id);
      std::ofstream f(dir.File("im" + std::to_string(rec.image_id) + kPredictionMapsExtension),
                      std::ios::binary);
      WritePredictionMaps(f, maps);
    }
  }
  const std::string args = "fit --dataset " + dataset + " --seed 5 " + dir.path().string();
  const CliRun a = RunTool(args + " --out " + dir.File("a.csv"), dir);
  ASSERT_EQ(a.status, 0) << a.err;
  const CliRun b = RunTool(args + " --jobs 1 --out " + dir.File("b.csv"), dir);
  ASSERT_EQ(b.status, 0) << b.err;
  EXPECT_EQ(ReadTextFile(dir.File("a.csv")), ReadTextFile(dir.File("b.csv")));
  const std::vector<ResultRecord> results = ReadResults(dir.File("a.csv"));
  EXPECT_EQ(results.size(), 4u);
  for (const ResultRecord& r : results) {
    const GroundTruthInstance& gt = scene[r.image_id].instances[0];
    EXPECT_LT((r.pose.translation - gt.pose.translation).norm(), 1e-3);
    EXPECT_EQ(r.time, 0.0);
  }
}

}  // namespace
}  // namespace pose_forge
