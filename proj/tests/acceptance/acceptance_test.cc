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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Thresholds are fixed; do not tune them.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "pose_forge/core/error.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/fitting/gc_ransac.h"
#include "pose_forge/fitting/pnp.h"
#include "pose_forge/fitting/progressive_x.h"
#include "pose_forge/fragments/fragments.h"
#include "pose_forge/fragments/prediction_maps.h"
#include "pose_forge/harness/commands.h"
#include "pose_forge/harness/ply.h"
#include "pose_forge/harness/results_io.h"
#include "pose_forge/harness/scene_io.h"
#include "pose_forge/metrics/kd_tree.h"
#include "pose_forge/metrics/pose_error.h"
#include "pose_forge/metrics/recall.h"
#include "pose_forge/metrics/symmetry.h"
#include "pose_forge/metrics/vsd.h"
#include "pose_forge/rasterizer/rasterizer.h"
#include "pose_forge/rasterizer/visibility.h"
#include "pose_forge/reference/serial_kernels.h"
#include "test_support.h"

namespace pose_forge {
namespace {

using testing::ExactCorrespondences;
using testing::RandomPoints;
using testing::RandomPose;
using testing::StandardCamera;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double DegreesBetween(const RigidPose& a, const RigidPose& b) {
  return RotationError(a.rotation, b.rotation) * 180.0 / std::numbers::pi;
}

bool WithinHalfDegreeFiveMm(const RigidPose& est, const RigidPose& gt) {
  return DegreesBetween(est, gt) < 0.5 && (est.translation - gt.translation).norm() < 5.0;
}

std::vector<Correspondence> WithOutliers(std::mt19937_64& rng,
                                         std::vector<Correspondence> inliers, int outliers,
                                         double half_extent) {
  std::uniform_real_distribution<double> u(0.0, 639.0), v(0.0, 479.0);
  for (const auto& x : RandomPoints(rng, outliers, half_extent)) {
    inliers.push_back({Eigen::Vector2d(u(rng), v(rng)), x, 1.0});
  }
  return inliers;
}

// ---------------------------------------------------------------- 1

void SolverOracles(Outcome* o) {
  const auto start = Clock::now();
  const CameraIntrinsics camera = StandardCamera();
  std::mt19937_64 rng(1001);
  int p3p_ok = 0, epnp_ok = 0, lm_ok = 0;
  double worst_p3p = 0.0, worst_epnp = 0.0, worst_lm = 0.0, worst_t = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const RigidPose pose = RandomPose(rng);
    const auto three = ExactCorrespondences(RandomPoints(rng, 3, 80.0), pose, camera);
    double best = std::numeric_limits<double>::infinity();
    try {
      for (const RigidPose& s : SolveP3P(three[0], three[1], three[2], camera)) {
        best = std::min(best, RotationError(s.rotation, pose.rotation));
      }
    } catch (const Error&) {
    }
    worst_p3p = std::max(worst_p3p, best);
    p3p_ok += best < 1e-6;

    const auto six = ExactCorrespondences(RandomPoints(rng, 6, 80.0), pose, camera);
    try {
      const RigidPose e = SolveEPnP(six, camera);
      const double re = RotationError(e.rotation, pose.rotation);
      const double te = (e.translation - pose.translation).norm();
      worst_epnp = std::max(worst_epnp, re);
      worst_t = std::max(worst_t, te);
      epnp_ok += re < 1e-6 && te < 1e-3;
      const RigidPose r = RefinePose(e, six, camera);
      const double rr = RotationError(r.rotation, pose.rotation);
      const double rt = (r.translation - pose.translation).norm();
      worst_lm = std::max(worst_lm, rr);
      worst_t = std::max(worst_t, rt);
      lm_ok += rr < 1e-6 && rt < 1e-3;
    } catch (const Error&) {
    }
  }
  const double elapsed = Seconds(start);
  o->detail << "P3P " << p3p_ok << "/" << n << ", EPnP " << epnp_ok << "/" << n
            << ", EPnP+LM " << lm_ok << "/" << n << "; worst rot " << worst_p3p << " / "
            << worst_epnp << " / " << worst_lm << " rad, worst t " << worst_t << " mm; "
            << elapsed << " s";
  o->Require(p3p_ok == n, "P3P");
  o->Require(epnp_ok == n, "EPnP");
  o->Require(lm_ok == n, "EPnP+LM");
  o->Require(elapsed < 10.0, "runtime < 10 s");
}

// ---------------------------------------------------------------- 2

void Robustness(Outcome* o) {
  const auto start = Clock::now();
  const CameraIntrinsics camera = StandardCamera();
  int single_ok = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(2000 + seed);
    const RigidPose pose = RandomPose(rng);
    const CorrespondenceSet set(WithOutliers(
        rng, ExactCorrespondences(RandomPoints(rng, 100, 60.0), pose, camera), 100, 60.0));
    FittingParams params;  // defaults
    params.seed = seed;
    try {
      single_ok += WithinHalfDegreeFiveMm(GcRansac(set, camera, params).pose, pose);
    } catch (const Error&) {
    }
  }
  int multi_ok = 0;
  std::map<std::size_t, int> found_histogram;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(3000 + seed);
    const std::vector<Eigen::Vector3d> offsets = {
        {-170, -60, 1000}, {170, -60, 1100}, {0, 130, 1200}};
    std::vector<RigidPose> planted;
    std::vector<Correspondence> c;
    for (const auto& t : offsets) {
      RigidPose p;
      p.rotation = testing::RandomRotation(rng);
      p.translation = t;
      planted.push_back(p);
      const auto in = ExactCorrespondences(RandomPoints(rng, 60, 50.0), p, camera);
      c.insert(c.end(), in.begin(), in.end());
    }
    const CorrespondenceSet set(WithOutliers(rng, c, 60, 50.0));
    MultiFittingParams params;
    params.fitting.seed = seed;
    std::vector<PoseHypothesis> found;
    try {
      found = ProgressiveX(set, camera, params);
    } catch (const Error&) {
    }
    ++found_histogram[found.size()];
    if (found.size() != 3) continue;
    bool all = true;
    for (const RigidPose& p : planted) {
      bool hit = false;
      for (const auto& h : found) hit |= WithinHalfDegreeFiveMm(h.pose, p);
      all &= hit;
    }
    multi_ok += all;
  }
  const double elapsed = Seconds(start);
  o->detail << "GC-RANSAC " << single_ok << "/100, Progressive-X " << multi_ok
            << "/100 (hypothesis counts:";
  for (const auto& [k, v] : found_histogram) o->detail << " " << k << "x" << v;
  o->detail << "); " << elapsed << " s";
  o->Require(single_ok >= 95, "GC-RANSAC >= 95");
  o->Require(multi_ok >= 90, "Progressive-X >= 90");
  o->Require(elapsed < 300.0, "runtime < 5 min");
}

// ---------------------------------------------------------------- 3

int RunTool(const std::string& args) {
  const std::string cmd = std::string(POSE_FORGE_CLI) + " " + args;
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void EndToEnd(Outcome* o) {
  const auto start = Clock::now();
  testing::TempDir dir("acceptance_e2e");
  const std::string dataset = dir.File("dataset");
  const std::string maps_dir = dir.File("maps");
  std::filesystem::create_directories(dataset + "/models");
  std::filesystem::create_directories(SceneDir(dataset, 1));
  std::filesystem::create_directories(maps_dir);
  // Subdivided so the cube has enough vertices for 64 fragment centers.
  const std::vector<TriangleMesh> models = {Subdivide(MakeCube(100.0), 3),
                                            MakePrism(64, 50.0, 100.0)};
  std::vector<FragmentAtlas> atlases;
  for (std::size_t m = 0; m < models.size(); ++m) {
    WritePly(ModelPath(dataset, int(m) + 1), models[m]);
    atlases.push_back(BuildFragmentAtlas(models[m], 64));
  }
  const CameraIntrinsics camera = StandardCamera();
  std::mt19937_64 rng(4004);
  std::vector<SceneRecord> records;
  for (int image = 0; image < 40; ++image) {
    SceneRecord rec;
    rec.scene_id = 1;
    rec.image_id = image;
    rec.camera = camera;
    GroundTruthInstance gt;
    gt.object_id = 1 + image % 2;
    gt.pose = RandomPose(rng);
    rec.instances.push_back(gt);
    records.push_back(rec);
    const PredictionMaps maps = testing::RenderPerfectMaps(
        models[image % 2], atlases[image % 2], gt.pose, camera, 4, gt.object_id, 1, image);
    std::ofstream f(maps_dir + "/im" + std::to_string(image) + kPredictionMapsExtension,
                    std::ios::binary);
    WritePredictionMaps(f, maps);
  }
  WriteScene(records, SceneDir(dataset, 1) + "/scene_gt.json",
             SceneDir(dataset, 1) + "/scene_camera.json");
  const std::string out = dir.File("results.csv");
  const int status = RunTool("fit --dataset " + dataset + " --out " + out + " " + maps_dir);
  o->Require(status == 0, "fit exit status");
  int ok = 0;
  double worst_deg = 0.0, worst_mm = 0.0;
  if (status == 0) {
    const std::vector<ResultRecord> results = ReadResults(out);
    for (const SceneRecord& rec : records) {
      const GroundTruthInstance& gt = rec.instances[0];
      // Best-scoring estimate of the right object in this image.
      const ResultRecord* best = nullptr;
      for (const ResultRecord& r : results) {
        if (r.image_id == rec.image_id && r.object_id == gt.object_id &&
            (best == nullptr || r.score > best->score)) {
          best = &r;
        }
      }
      if (best == nullptr) {
        worst_deg = std::numeric_limits<double>::infinity();
        continue;
      }
      worst_deg = std::max(worst_deg, DegreesBetween(best->pose, gt.pose));
      worst_mm = std::max(worst_mm, (best->pose.translation - gt.pose.translation).norm());
      ok += WithinHalfDegreeFiveMm(best->pose, gt.pose);
    }
  }
  const double elapsed = Seconds(start);
  o->detail << ok << "/40 poses within 0.5 deg / 5 mm (worst " << worst_deg << " deg, "
            << worst_mm << " mm); " << elapsed << " s";
  o->Require(ok == 40, "all 40 poses");
  o->Require(elapsed < 120.0, "runtime < 2 min");
}

// ---------------------------------------------------------------- 4

void MetricOracles(Outcome* o) {
  std::mt19937_64 rng(5005);
  const CameraIntrinsics camera = StandardCamera();
  const TriangleMesh cube = MakeCube(80.0);
  const std::vector<RigidPose> syms = DiscoverSymmetries(cube);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::vector<Eigen::Vector3d> pts = RandomPoints(rng, 200, 50.0);
    const RigidPose est = RandomPose(rng), gt = RandomPose(rng);
    worst = std::max(worst, std::abs(AddError(est, gt, pts) - reference::AddError(est, gt, pts)));
    worst = std::max(worst, std::abs(AdiError(est, gt, pts) - reference::AdiError(est, gt, pts)));
    worst = std::max(worst, std::abs(MssdError(est, gt, syms, pts) -
                                     reference::MssdError(est, gt, syms, pts)));
    worst = std::max(worst, std::abs(MspdError(est, gt, syms, pts, camera) -
                                     reference::MspdError(est, gt, syms, pts, camera)));
  }
  int adi_violations = 0;
  const std::vector<Eigen::Vector3d> model = RandomPoints(rng, 100, 50.0);
  const KdTree tree(model);
  for (int i = 0; i < 10000; ++i) {
    const RigidPose est = RandomPose(rng), gt = RandomPose(rng);
    adi_violations += AdiError(est, gt, model, tree) > AddError(est, gt, model);
  }
  double worst_angle = 0.0;
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int i = 0; i < 10000; ++i) {
    const Eigen::Vector3d axis = RandomPoints(rng, 1, 1.0)[0].normalized();
    // Include the ends of the range, where naive formulas lose precision.
    double a = angle(rng);
    if (i % 10 == 0) a = 1e-7 * (i % 7);
    if (i % 10 == 1) a = std::numbers::pi - 1e-7 * (i % 7);
    const Eigen::Matrix3d base = testing::RandomRotation(rng);
    worst_angle = std::max(
        worst_angle, std::abs(RotationError(AxisAngleToRotation(a * axis) * base, base) - a));
  }
  o->detail << "oracle deviation " << worst << ", ADI > ADD in " << adi_violations
            << "/10000, angle deviation " << worst_angle;
  o->Require(worst <= 1e-9, "oracles within 1e-9");
  o->Require(adi_violations == 0, "ADI <= ADD");
  o->Require(worst_angle <= 1e-9, "angle within 1e-9");
}

// ---------------------------------------------------------------- 5

void VsdBehavior(Outcome* o) {
  std::mt19937_64 rng(6006);
  const CameraIntrinsics camera = StandardCamera();
  const TriangleMesh prism = MakePrism(32, 40.0, 80.0);
  double worst_self = 0.0;
  for (int i = 0; i < 20; ++i) {
    const RigidPose gt = RandomPose(rng);
    const DistanceMap scene = RenderDistanceMap(prism, gt, camera);
    worst_self = std::max(worst_self, VsdError(prism, gt, gt, camera, scene));
  }
  // Small distant object pushed back along its line of sight by 3 tau.
  const TriangleMesh small = MakeCube(30.0);
  RigidPose gt;
  gt.translation = {40, -25, 2000};
  RigidPose shifted = gt;
  shifted.translation += gt.translation.normalized() * 3.0 * kDefaultVsdTau;
  const double shifted_error =
      VsdError(small, shifted, gt, camera, RenderDistanceMap(small, gt, camera));

  std::uniform_real_distribution<double> value(800.0, 900.0);
  std::bernoulli_distribution empty(0.3);
  int mask_mismatch = 0;
  for (int trial = 0; trial < 100; ++trial) {
    DistanceMap est(41, 29), gtm(41, 29), scene(41, 29);
    for (auto* m : {&est, &gtm, &scene}) {
      for (auto& x : m->data()) x = empty(rng) ? 0.0 : value(rng);
    }
    const VisibilityMasks got = ComputeVisibilityMasks(est, gtm, scene, kDefaultVsdDelta);
    for (std::size_t i = 0; i < est.size(); ++i) {
      const bool vg = gtm[i] > 0 && (scene[i] == 0 || gtm[i] - scene[i] <= kDefaultVsdDelta);
      const bool ve =
          est[i] > 0 && (scene[i] == 0 || est[i] - scene[i] <= kDefaultVsdDelta || vg);
      if ((got.ground_truth[i] != 0) != vg || (got.estimate[i] != 0) != ve) {
        ++mask_mismatch;
        break;
      }
    }
  }
  o->detail << "max e(P,P) " << worst_self << ", shifted " << shifted_error
            << ", mask mismatches " << mask_mismatch << "/100, tau " << kDefaultVsdTau
            << " delta " << kDefaultVsdDelta << " theta " << kSisoVsdThreshold;
  o->Require(worst_self == 0.0, "e(P,P) = 0");
  o->Require(shifted_error >= 0.99, "3 tau shift >= 0.99");
  o->Require(mask_mismatch == 0, "masks");
  o->Require(kDefaultVsdTau == 20.0 && kDefaultVsdDelta == 15.0 && kSisoVsdThreshold == 0.3,
             "constants");
}

// ---------------------------------------------------------------- 6

void SymmetryDiscovery(Outcome* o) {
  struct Case {
    std::string name;
    TriangleMesh mesh;
  };
  const std::vector<Case> cases = {{"cube", MakeCube(100.0)},
                                   {"scalene", testing::ScaleneTetrahedron()},
                                   {"72-gon", MakePrism(72, 50.0, 100.0)}};
  for (const Case& c : cases) {
    const auto start = Clock::now();
    const std::vector<RigidPose> syms = DiscoverSymmetries(c.mesh);
    const double elapsed = Seconds(start);
    const double eps = SymmetryTolerance(MeshDiameter(c.mesh));
    const KdTree tree(c.mesh.vertices);
    double worst = 0.0;
    int axis_rotations = 0;
    for (const RigidPose& s : syms) {
      worst = std::max(worst, DirectedHausdorff(c.mesh.vertices, s, tree));
      axis_rotations += (s.rotation * Eigen::Vector3d::UnitZ()).z() > 1.0 - 1e-6;
    }
    o->detail << c.name << ": " << syms.size() << " (" << axis_rotations
              << " about z), Hausdorff " << worst << " < " << eps << ", " << elapsed
              << " s; ";
    o->Require(worst < eps, c.name + " Hausdorff");
    o->Require(elapsed < 60.0, c.name + " runtime");
    if (c.name == "cube") o->Require(syms.size() == 24, "cube = 24");
    if (c.name == "scalene") o->Require(syms.size() == 1, "scalene = identity");
    if (c.name == "72-gon") o->Require(axis_rotations >= 60, "72-gon >= 60");
  }
}

// ---------------------------------------------------------------- 7

void ScoringProtocol(Outcome* o) {
  EvalOptions options;
  const std::string toy = testing::ToyDatasetDir();
  options.datasets.push_back({toy, toy + "/results_straddle.csv"});
  const DatasetReport d = RunEval(options).datasets.at(0);
  // Hand counts over the toy images (4 instances):
  //   VSD: 100 + 54 + 80 + 100 correct (tau, theta) cells out of 400;
  //   MSSD: 10 + 6 + 10 + 10 of 40; MSPD: 10 + 10 + 9 + 10 of 40.
  const double want_vsd = 334.0 / 400.0, want_mssd = 36.0 / 40.0, want_mspd = 39.0 / 40.0;
  o->detail << "AR_VSD " << d.ar_vsd << " (hand " << want_vsd << "), AR_MSSD " << d.ar_mssd
            << " (hand " << want_mssd << "), AR_MSPD " << d.ar_mspd << " (hand " << want_mspd
            << ")";
  o->Require(std::abs(d.ar_vsd - want_vsd) < 1e-12, "AR_VSD");
  o->Require(std::abs(d.ar_mssd - want_mssd) < 1e-12, "AR_MSSD");
  o->Require(std::abs(d.ar_mspd - want_mspd) < 1e-12, "AR_MSPD");
  bool grids = VsdToleranceFractions().size() == 10 && MspdThresholds(640).size() == 10;
  for (int k = 0; k < 10; ++k) {
    const double step = 0.05 * (k + 1);
    grids &= std::abs(VsdToleranceFractions()[k] - step) < 1e-12;
    grids &= std::abs(VsdThresholds()[k] - step) < 1e-12;
    grids &= std::abs(MssdThresholdFractions()[k] - step) < 1e-12;
    grids &= std::abs(MspdThresholds(640)[k] - 5.0 * (k + 1)) < 1e-12;
    grids &= std::abs(MspdThresholds(1280)[k] - 10.0 * (k + 1)) < 1e-12;
  }
  o->Require(grids, "threshold grids");
  o->detail << ", grids " << (grids ? "verbatim" : "differ");
}

// ---------------------------------------------------------------- 8

template <typename Fn>
bool PositionedParseError(Fn fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.position() >= 0;
  } catch (...) {
    return false;
  }
  return false;
}

void FormatRoundTrips(Outcome* o) {
  std::mt19937_64 rng(8008);
  std::uniform_real_distribution<double> coord(-500.0, 500.0);
  TriangleMesh mesh;
  for (int i = 0; i < 10000; ++i) {
    mesh.vertices.emplace_back(coord(rng), coord(rng), coord(rng));
    mesh.normals.push_back(RandomPoints(rng, 1, 1.0)[0].normalized());
  }
  for (int i = 0; i < 10000; ++i) {
    mesh.triangles.push_back({int(rng() % 10000), int(rng() % 10000), int(rng() % 10000)});
  }
  double ply_drift = 0.0;
  bool ply_topology = true;
  for (PlyFormat format : {PlyFormat::kAscii, PlyFormat::kBinaryLittleEndian}) {
    std::stringstream buffer;
    WritePly(buffer, mesh, format);
    const TriangleMesh back = ParsePly(buffer.str());
    ply_topology &= back.triangles == mesh.triangles &&
                    back.vertices.size() == mesh.vertices.size() &&
                    back.normals.size() == mesh.normals.size();
    for (std::size_t i = 0; ply_topology && i < mesh.vertices.size(); ++i) {
      ply_drift = std::max(ply_drift, (back.vertices[i] - mesh.vertices[i]).cwiseAbs().maxCoeff());
      ply_drift = std::max(ply_drift, (back.normals[i] - mesh.normals[i]).cwiseAbs().maxCoeff());
    }
  }

  std::vector<ResultRecord> records;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    ResultRecord r;
    r.scene_id = rng() % 100;
    r.image_id = rng() % 5000;
    r.object_id = 1 + rng() % 30;
    r.score = unit(rng);
    r.pose.rotation = testing::RandomRotation(rng);
    r.pose.translation = {coord(rng), coord(rng), 10.0 * coord(rng)};
    r.time = unit(rng);
    records.push_back(r);
  }
  std::stringstream csv;
  WriteResults(csv, records);
  const std::vector<ResultRecord> back = ReadResults(csv);
  double csv_drift = back.size() == records.size() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < back.size() && i < records.size(); ++i) {
    const bool ids = back[i].scene_id == records[i].scene_id &&
                     back[i].image_id == records[i].image_id &&
                     back[i].object_id == records[i].object_id;
    if (!ids) csv_drift = 1.0;
    csv_drift = std::max(csv_drift, std::abs(back[i].score - records[i].score));
    csv_drift = std::max(csv_drift, std::abs(back[i].time - records[i].time));
    csv_drift = std::max(
        csv_drift, (back[i].pose.rotation - records[i].pose.rotation).cwiseAbs().maxCoeff());
    csv_drift = std::max(
        csv_drift,
        (back[i].pose.translation - records[i].pose.translation).cwiseAbs().maxCoeff());
  }

  // Corrupted fixtures: every one must raise a positioned parse error.
  std::stringstream small;
  WritePly(small, MakeCube(10.0), PlyFormat::kBinaryLittleEndian);
  const std::string ply = small.str();
  const std::string csv_text = csv.str().substr(0, 2000);
  const std::vector<std::function<void()>> fixtures = {
      [&] { ParsePly(ply.substr(0, ply.size() / 2)); },
      [&] {
        ParsePly("ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\n"
                 "property float y\nproperty float z\nend_header\n1 q 3\n");
      },
      [&] { ParsePly("not a ply"); },
      [&] {
        std::istringstream in(std::string(kResultsHeader) + "\n1,2,3,0.5,1 0 0,0 0 1,0\n");
        ReadResults(in);
      },
      [&] {
        std::istringstream in(csv_text.substr(0, csv_text.rfind(',')) + "\n");
        ReadResults(in);
      },
      [&] { ParseScene("{\"0\": [{\"obj_id\": 1,", "{}", 1); },
      [&] {
        std::stringstream maps;
        WritePredictionMaps(maps, PredictionMaps(8, 8, 4, 1, 2));
        std::stringstream cut(maps.str().substr(0, maps.str().size() - 7));
        ReadPredictionMaps(cut);
      },
  };
  int positioned = 0;
  std::string unpositioned;
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    if (PositionedParseError(fixtures[k])) {
      ++positioned;
    } else {
      unpositioned += " #" + std::to_string(k);
    }
  }
  // Random byte damage: any library error is fine, a crash is not.
  int fuzz_errors = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s = trial % 2 ? ply : csv_text;
    for (int k = 0; k < 3; ++k) s[rng() % s.size()] = static_cast<char>(rng());
    try {
      if (trial % 2) {
        ParsePly(s);
      } else {
        std::istringstream in(s);
        ReadResults(in);
      }
    } catch (const Error&) {
      ++fuzz_errors;
    }
  }
  o->detail << "PLY drift " << ply_drift << ", CSV drift " << csv_drift << " over 10^4; "
            << positioned << "/" << fixtures.size() << " fixtures positioned" << unpositioned
            << "; "
            << fuzz_errors << "/2000 fuzzed inputs rejected cleanly";
  o->Require(ply_topology && ply_drift <= 1e-6, "PLY round trip");
  o->Require(csv_drift <= 1e-6, "CSV round trip");
  o->Require(positioned == int(fixtures.size()), "positioned errors");
}

}  // namespace
}  // namespace pose_forge

// Optional arguments select criteria by number; default is all.
int main(int argc, char** argv) {
  using pose_forge::Outcome;
  const std::vector<std::pair<std::string, std::function<void(Outcome*)>>> criteria = {
      {"1 solver oracles", pose_forge::SolverOracles},
      {"2 robustness", pose_forge::Robustness},
      {"3 end-to-end synthetic fit", pose_forge::EndToEnd},
      {"4 metric oracles", pose_forge::MetricOracles},
      {"5 VSD behavior", pose_forge::VsdBehavior},
      {"6 symmetry discovery", pose_forge::SymmetryDiscovery},
      {"7 scoring protocol", pose_forge::ScoringProtocol},
      {"8 format round trips", pose_forge::FormatRoundTrips},
  };
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k >= 1 && k <= int(criteria.size())) selected[k - 1] = true;
  }
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!selected[k]) continue;
    const auto& [name, run] = criteria[k];
    Outcome o;
    try {
      run(&o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail.str()
              << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
