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

#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "pose_forge/core/error.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/fragments/fragments.h"
#include "pose_forge/fragments/prediction_maps.h"
#include "pose_forge/reference/serial_kernels.h"
#include "test_support.h"

namespace pose_forge {
namespace {

using testing::RandomPoints;

TriangleMesh PointMesh(std::vector<Eigen::Vector3d> points) {
  TriangleMesh mesh;
  mesh.vertices = std::move(points);
  return mesh;
}

TEST(FarthestPointSampling, MatchesSerialReference) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const TriangleMesh mesh = PointMesh(RandomPoints(rng, 500 + 100 * trial, 60.0));
    const int n = 8 + 8 * trial;
    EXPECT_EQ(FarthestPointSampling(mesh, n),
              reference::FarthestPointSampling(mesh.vertices, n));
  }
}

// The centroid seed keeps every corner of a cube at the same distance
// (half the diagonal), so all picks are ties resolved by index.
TEST(FarthestPointSampling, CubeCornersInTieOrder) {
  EXPECT_EQ(FarthestPointSampling(MakeCube(10.0), 8),
            (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(FarthestPointSampling, SpreadIsMonotone) {
  // The distance of each new pick to the selected set (the centroid seed
  // plus earlier picks) never increases.
  std::mt19937_64 rng(3);
  const TriangleMesh mesh = PointMesh(RandomPoints(rng, 2000, 50.0));
  const std::vector<int> picks = FarthestPointSampling(mesh, 64);
  const Eigen::Vector3d centroid = mesh.VertexCentroid();
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < picks.size(); ++k) {
    double d = (mesh.vertices[picks[k]] - centroid).norm();
    for (std::size_t j = 0; j < k; ++j) {
      d = std::min(d, (mesh.vertices[picks[k]] - mesh.vertices[picks[j]]).norm());
    }
    EXPECT_LE(d, last + 1e-12);
    last = d;
  }
}

TEST(FarthestPointSampling, RejectsTooFewVertices) {
  try {
    FarthestPointSampling(MakeCube(1.0), 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewVertices);
  }
}

TEST(Fragments, AssignmentMatchesReference) {
  std::mt19937_64 rng(4);
  const TriangleMesh mesh = PointMesh(RandomPoints(rng, 3000, 70.0));
  const FragmentAtlas atlas = BuildFragmentAtlas(mesh, 32);
  EXPECT_EQ(atlas.vertex_assignment,
            reference::AssignFragments(mesh.vertices, atlas.centers));
  // Every center owns at least its own vertex.
  for (int f = 0; f < atlas.fragment_count(); ++f) {
    EXPECT_GE(atlas.normalizers[f], kMinFragmentNormalizer);
    EXPECT_EQ(NearestFragment(atlas, atlas.centers[f]), f);
  }
}

TEST(Fragments, CoordinateRoundTrip) {
  std::mt19937_64 rng(9);
  const TriangleMesh mesh = PointMesh(RandomPoints(rng, 1000, 40.0));
  const FragmentAtlas atlas = BuildFragmentAtlas(mesh, 16);
  for (const auto& x : RandomPoints(rng, 500, 40.0)) {
    const int f = NearestFragment(atlas, x);
    const Eigen::Vector3d r = EncodeFragmentCoord(x, f, atlas);
    EXPECT_LT((DecodeFragmentCoord(r, f, atlas) - x).norm(), 1e-12);
  }
  EXPECT_THROW(EncodeFragmentCoord(Eigen::Vector3d::Zero(), 16, atlas), Error);
  EXPECT_THROW(DecodeFragmentCoord(Eigen::Vector3d::Zero(), -1, atlas), Error);
}

// Two centers, vertices hand placed: the bounding-box sides are known.
TEST(Fragments, NormalizersAreLongestBoxSide) {
  const TriangleMesh mesh =
      PointMesh({{0, 0, 0}, {4, 1, 0}, {1, 3, 0}, {100, 0, 0}, {100, 0, 7}, {102, 1, 0}});
  const std::vector<int> assignment = {0, 0, 0, 1, 1, 1};
  const std::vector<double> h = FragmentNormalizers(mesh, assignment, 2);
  EXPECT_DOUBLE_EQ(h[0], 4.0);
  EXPECT_DOUBLE_EQ(h[1], 7.0);
  EXPECT_THROW(FragmentNormalizers(mesh, assignment, 3), Error);
}

PredictionMaps SmallMaps() {
  PredictionMaps maps(8, 4, 4, 5, 2);  // grid 2 x 1
  maps.scene_id = 3;
  maps.image_id = 11;
  return maps;
}

TEST(PredictionMaps, GeometryHelpers) {
  const PredictionMaps maps(10, 7, 4, 1, 3);
  EXPECT_EQ(maps.grid_width(), 3);
  EXPECT_EQ(maps.grid_height(), 2);
  EXPECT_EQ(maps.plane_size(), 6u);
  EXPECT_EQ(maps.CellCenter(0, 0), Eigen::Vector2d(1.5, 1.5));
  EXPECT_EQ(maps.CellCenter(2, 1), Eigen::Vector2d(9.5, 5.5));
  EXPECT_EQ(maps.fragment_coord.size(), 3u * 3u * 6u);
}

TEST(PredictionMaps, StreamRoundTrip) {
  PredictionMaps maps = SmallMaps();
  std::mt19937 rng(1);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (auto& v : maps.object_prob) v = u(rng);
  for (auto& v : maps.fragment_prob) v = u(rng);
  for (auto& v : maps.fragment_coord) v = u(rng) - 0.5f;
  std::stringstream buffer;
  WritePredictionMaps(buffer, maps);
  const PredictionMaps back = ReadPredictionMaps(buffer);
  EXPECT_EQ(back.width, 8);
  EXPECT_EQ(back.object_id, 5);
  EXPECT_EQ(back.scene_id, 3);
  EXPECT_EQ(back.image_id, 11);
  EXPECT_EQ(back.object_prob, maps.object_prob);
  EXPECT_EQ(back.fragment_prob, maps.fragment_prob);
  EXPECT_EQ(back.fragment_coord, maps.fragment_coord);
}

TEST(PredictionMaps, TruncationReportsOffset) {
  std::stringstream buffer;
  WritePredictionMaps(buffer, SmallMaps());
  const std::string full = buffer.str();
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, full.size() / 2, full.size() - 1}) {
    std::stringstream truncated(full.substr(0, cut));
    try {
      ReadPredictionMaps(truncated);
      FAIL() << "cut at " << cut;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.unit(), ParseError::Unit::kByteOffset);
      EXPECT_LE(e.position(), static_cast<std::int64_t>(full.size()));
    }
  }
}

TEST(PredictionMaps, RejectsOutOfRangeProbability) {
  PredictionMaps maps = SmallMaps();
  maps.object_prob[0] = 1.5f;
  EXPECT_THROW(maps.Validate(), Error);
}

TEST(SelectCorrespondences, AppliesBothThresholds) {
  const TriangleMesh mesh = PointMesh({{0, 0, 0}, {10, 0, 0}});
  const FragmentAtlas atlas = BuildFragmentAtlas(mesh, 2);
  PredictionMaps maps = SmallMaps();
  // Cell 0: object 0.9, fragments 0.8 and 0.3 (ratio 0.375, dropped).
  maps.ObjectProb(0) = 0.9f;
  maps.FragmentProb(0, 0) = 0.8f;
  maps.FragmentProb(1, 0) = 0.3f;
  // Cell 1: object below 0.1.
  maps.ObjectProb(1) = 0.05f;
  maps.FragmentProb(0, 1) = 1.0f;
  std::vector<Correspondence> c = SelectCorrespondences(maps, atlas);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c[0].confidence, 0.9 * 0.8, 1e-6);
  EXPECT_EQ(c[0].pixel, maps.CellCenter(0, 0));

  // Raise fragment 1 above half the maximum: both links survive.
  maps.FragmentProb(1, 0) = 0.5f;
  c = SelectCorrespondences(maps, atlas);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].pixel, c[1].pixel);
}

TEST(SelectCorrespondences, PerfectMapsDecodeToSurfacePoints) {
  const TriangleMesh cube = MakeCube(100.0);
  const FragmentAtlas atlas = BuildFragmentAtlas(cube, 8);
  RigidPose pose;
  pose.rotation = AxisAngleToRotation(Eigen::Vector3d(0.3, -0.4, 0.2));
  pose.translation = Eigen::Vector3d(10, -5, 900);
  const CameraIntrinsics camera = testing::StandardCamera();
  const PredictionMaps maps =
      testing::RenderPerfectMaps(cube, atlas, pose, camera, 4, 1, 1, 0);
  const std::vector<Correspondence> c = SelectCorrespondences(maps, atlas);
  ASSERT_GT(c.size(), 100u);
  for (const Correspondence& k : c) {
    EXPECT_LT((Project(k.point, pose, camera) - k.pixel).norm(), 1e-3);
    EXPECT_LE(k.point.cwiseAbs().maxCoeff(), 50.0 + 1e-3);
  }
}

}  // namespace
}  // namespace pose_forge
