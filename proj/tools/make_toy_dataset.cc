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

// Regenerates data/toy: a cube (obj 1) and a 64-sided prism standing in for
// a cylinder (obj 2), one object per image, seen along its symmetry axis so
// that only the front face is visible. Estimates in results_straddle.csv are
// pure shifts whose errors land strictly inside threshold intervals.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/harness/ply.h"
#include "pose_forge/harness/results_io.h"
#include "pose_forge/harness/scene_io.h"
#include "pose_forge/harness/symmetry_io.h"
#include "pose_forge/metrics/symmetry.h"
#include "pose_forge/rasterizer/depth_image_io.h"
#include "pose_forge/rasterizer/rasterizer.h"

namespace pf = pose_forge;

namespace {

constexpr double kDepthScale = 0.1;  // mm per stored unit

pf::RigidPose Pose(double rz_deg, const Eigen::Vector3d& t) {
  pf::RigidPose p;
  p.rotation = pf::AxisAngleToRotation(Eigen::Vector3d(0, 0, rz_deg * std::numbers::pi / 180.0));
  p.translation = t;
  return p;
}

pf::ResultRecord Estimate(int image, int object, double score, const pf::RigidPose& pose) {
  pf::ResultRecord r;
  r.scene_id = 1;
  r.image_id = image;
  r.object_id = object;
  r.score = score;
  r.pose = pose;
  return r;
}

pf::RigidPose Shifted(pf::RigidPose p, const Eigen::Vector3d& d) {
  p.translation += d;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2 || argv[1][0] == '-') {
    std::cerr << "usage: make_toy_dataset OUT_DIR\n";
    return 2;
  }
  const std::string root = argv[1];
  std::filesystem::create_directories(root + "/models");
  std::filesystem::create_directories(pf::SceneDir(root, 1) + "/depth");

  const pf::TriangleMesh cube = pf::MakeCube(100.0);
  const pf::TriangleMesh cylinder = pf::MakePrism(64, 50.0, 100.0);
  pf::WritePly(pf::ModelPath(root, 1), cube, pf::PlyFormat::kAscii);
  pf::WritePly(pf::ModelPath(root, 2), cylinder, pf::PlyFormat::kAscii);

  std::map<int, pf::SymmetryAnnotation> symmetries;
  symmetries[1].discrete = pf::DiscoverSymmetries(cube);
  symmetries[1].discrete.erase(symmetries[1].discrete.begin());  // identity is implicit
  pf::RigidPose flip;
  flip.rotation = pf::AxisAngleToRotation(Eigen::Vector3d(std::numbers::pi, 0, 0));
  symmetries[2].discrete = {flip};
  symmetries[2].continuous = {pf::ContinuousSymmetry{Eigen::Vector3d::UnitZ(),
                                                     Eigen::Vector3d::Zero(), 64}};
  pf::WriteSymmetries(root + "/models/symmetries.json", symmetries);

  pf::CameraIntrinsics camera;
  camera.fx = camera.fy = 1000.0;
  camera.cx = 319.5;
  camera.cy = 239.5;
  camera.width = 640;
  camera.height = 480;

  const std::vector<std::pair<int, pf::RigidPose>> gt = {
      {1, Pose(0.0, {0, 0, 1000})},
      {1, Pose(30.0, {0, 0, 1100})},
      {2, Pose(0.0, {0, 0, 1000})},
      {2, Pose(10.0, {0, 0, 900})},
  };
  std::vector<pf::SceneRecord> records;
  for (int im = 0; im < 4; ++im) {
    pf::SceneRecord r;
    r.scene_id = 1;
    r.image_id = im;
    r.camera = camera;
    r.depth_scale = kDepthScale;
    r.instances.push_back({gt[im].first, gt[im].second, 1.0});
    records.push_back(r);
    const pf::TriangleMesh& mesh = gt[im].first == 1 ? cube : cylinder;
    pf::WriteScaledPng16(pf::DepthPath(root, 1, im),
                         pf::RenderDepthMap(mesh, gt[im].second, camera), kDepthScale);
  }
  const std::string scene = pf::SceneDir(root, 1);
  pf::WriteScene(records, scene + "/scene_gt.json", scene + "/scene_camera.json");

  std::vector<pf::ResultRecord> exact;
  for (int im = 0; im < 4; ++im) exact.push_back(Estimate(im, gt[im].first, 1.0, gt[im].second));
  pf::WriteResults(root + "/results_exact.csv", exact);

  std::vector<pf::ResultRecord> straddle = {
      // Exact, plus a worse lower-scored duplicate and an absent object.
      Estimate(0, 1, 0.9, gt[0].second),
      Estimate(0, 1, 0.5, Shifted(gt[0].second, {0, 0, 500})),
      Estimate(0, 2, 0.8, gt[2].second),
      // 40 mm further away.
      Estimate(1, 1, 0.7, Shifted(gt[1].second, {0, 0, 40})),
      // 6 mm sideways.
      Estimate(2, 2, 0.6, Shifted(gt[2].second, {6, 0, 0})),
      // Flipped about the model x axis: identical up to symmetry.
      Estimate(3, 2, 0.9, gt[3].second * flip),
  };
  pf::WriteResults(root + "/results_straddle.csv", straddle);
  return 0;
}
