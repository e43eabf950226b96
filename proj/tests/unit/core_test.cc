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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/error.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/reference/serial_kernels.h"
#include "test_support.h"

namespace pose_forge {
namespace {

using testing::RandomPoints;
using testing::RandomPose;
using testing::RandomRotation;
using testing::StandardCamera;

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

TEST(Camera, ProjectBackProjectRoundTrip) {
  const CameraIntrinsics camera = StandardCamera();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 639.0), v(0.0, 479.0), z(100.0, 5000.0);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector2d px(u(rng), v(rng));
    const Eigen::Vector3d p = camera.BackProject(px, z(rng));
    EXPECT_LT((camera.ProjectCameraPoint(p) - px).norm(), 1e-9);
    EXPECT_LT((camera.Bearing(px) - p.normalized()).norm(), 1e-12);
  }
}

TEST(Camera, PrincipalPointProjectsToItself) {
  const CameraIntrinsics camera = StandardCamera();
  const Eigen::Vector2d p = camera.ProjectCameraPoint({0.0, 0.0, 750.0});
  EXPECT_DOUBLE_EQ(p.x(), camera.cx);
  EXPECT_DOUBLE_EQ(p.y(), camera.cy);
}

TEST(Camera, ProjectRejectsPointsBehind) {
  const CameraIntrinsics camera = StandardCamera();
  EXPECT_EQ(CodeOf([&] { Project({0, 0, -10}, RigidPose::Identity(), camera); }),
            ErrorCode::kNonPositiveDepth);
  EXPECT_EQ(CodeOf([&] { Project({0, 0, 0}, RigidPose::Identity(), camera); }),
            ErrorCode::kNonPositiveDepth);
  EXPECT_FALSE(TryProject({1, 1, -1}, RigidPose::Identity(), camera).has_value());
  EXPECT_TRUE(TryProject({1, 1, 1}, RigidPose::Identity(), camera).has_value());
}

TEST(Camera, ValidateRejectsBadIntrinsics) {
  CameraIntrinsics c = StandardCamera();
  EXPECT_NO_THROW(c.Validate());
  c.fx = 0.0;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kValidationError);
  c = StandardCamera();
  c.cx = 700.0;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kValidationError);
  c = StandardCamera();
  c.height = 0;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kValidationError);
}

// A grid cell center in image pixels must land on the integer grid pixel.
TEST(Camera, SubsampledMatchesCellCenters) {
  const CameraIntrinsics camera = StandardCamera();
  for (int stride : {1, 2, 4, 8}) {
    const CameraIntrinsics grid = camera.Subsampled(stride);
    EXPECT_EQ(grid.width, (camera.width + stride - 1) / stride);
    std::mt19937_64 rng(stride);
    for (int i = 0; i < 50; ++i) {
      const Eigen::Vector3d p(rng() % 200 - 100.0, rng() % 200 - 100.0, 900.0 + rng() % 100);
      const Eigen::Vector2d g = grid.ProjectCameraPoint(p);
      const Eigen::Vector2d full = camera.ProjectCameraPoint(p);
      const Eigen::Vector2d center = g * stride + Eigen::Vector2d::Constant((stride - 1) / 2.0);
      EXPECT_LT((center - full).norm(), 1e-9);
    }
  }
}

TEST(Camera, DepthToDistanceScalesByRayLength) {
  const CameraIntrinsics camera = StandardCamera();
  DepthMap depth(camera.width, camera.height, 0.0);
  depth(0, 0) = 1000.0;
  depth(320, 240) = 500.0;
  const DistanceMap d = DepthToDistance(depth, camera);
  const double expected = 1000.0 * Eigen::Vector3d((0 - camera.cx) / camera.fx,
                                                   (0 - camera.cy) / camera.fy, 1.0)
                                       .norm();
  EXPECT_NEAR(d(0, 0), expected, 1e-9);
  EXPECT_GT(d(320, 240), 500.0);
  EXPECT_EQ(d(5, 5), 0.0);
  EXPECT_EQ(CodeOf([&] { DepthToDistance(DepthMap(10, 10), camera); }),
            ErrorCode::kDimensionMismatch);
}

TEST(RigidPose, ComposeAndInverse) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const RigidPose a = RandomPose(rng), b = RandomPose(rng);
    const Eigen::Vector3d x = RandomPoints(rng, 1, 100.0)[0];
    EXPECT_LT(((a * b) * x - a * (b * x)).norm(), 1e-9);
    EXPECT_LT((a.Inverse() * (a * x) - x).norm(), 1e-9);
    EXPECT_TRUE((a * b).IsValid(1e-9));
  }
}

TEST(RigidPose, MakeRigidPoseGatesOrthonormality) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  EXPECT_NO_THROW(MakeRigidPose(r, Eigen::Vector3d::Zero()));
  r(0, 1) = 2e-3;
  EXPECT_EQ(CodeOf([&] { MakeRigidPose(r, Eigen::Vector3d::Zero(), 1e-3); }),
            ErrorCode::kValidationError);
  // Reflection.
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(2, 2) = -1.0;
  EXPECT_EQ(CodeOf([&] { MakeRigidPose(m, Eigen::Vector3d::Zero()); }),
            ErrorCode::kValidationError);
}

TEST(Rotation, AxisAngleMagnitudeIsRecovered) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d axis = RandomPoints(rng, 1, 1.0)[0].normalized();
    const double a = angle(rng);
    const Eigen::Matrix3d r = AxisAngleToRotation(a * axis);
    EXPECT_NEAR(RotationAngle(r), a, 1e-9);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
  EXPECT_EQ(AxisAngleToRotation(Eigen::Vector3d::Zero()), Eigen::Matrix3d::Identity());
}

TEST(Rotation, ProjectToRotationIsIdempotentAndProper) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1e-3);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Matrix3d r = RandomRotation(rng);
    Eigen::Matrix3d noisy = r;
    for (int k = 0; k < 9; ++k) noisy(k / 3, k % 3) += n(rng);
    const Eigen::Matrix3d p = ProjectToRotation(noisy);
    EXPECT_TRUE((RigidPose{p, Eigen::Vector3d::Zero()}.IsValid(1e-12)));
    EXPECT_LT((ProjectToRotation(r) - r).norm(), 1e-12);
  }
}

TEST(Mesh, ValidateCatchesBadIndices) {
  TriangleMesh mesh = MakeCube(10.0);
  EXPECT_NO_THROW(mesh.Validate());
  mesh.triangles.push_back({0, 1, 8});
  EXPECT_EQ(CodeOf([&] { mesh.Validate(); }), ErrorCode::kValidationError);
  mesh = MakeCube(10.0);
  mesh.normals.resize(3);
  EXPECT_EQ(CodeOf([&] { mesh.Validate(); }), ErrorCode::kValidationError);
}

TEST(Mesh, CubeAndPrismDiameters) {
  EXPECT_NEAR(MeshDiameter(MakeCube(100.0)), 100.0 * std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(MeshDiameter(MakePrism(64, 50.0, 100.0)), std::hypot(100.0, 100.0), 1e-9);
  EXPECT_EQ(CodeOf([] { MeshDiameter(std::vector<Eigen::Vector3d>{{0, 0, 0}}); }),
            ErrorCode::kDegenerateMesh);
}

TEST(Mesh, DiameterMatchesAllPairs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Eigen::Vector3d> pts = RandomPoints(rng, 50 + trial * 20, 80.0);
    // Stretch to break the symmetry of the cube sampling.
    for (auto& p : pts) p.x() *= 1.0 + 0.05 * trial;
    EXPECT_DOUBLE_EQ(MeshDiameter(pts), reference::MeshDiameter(pts));
  }
}

TEST(Mesh, SubdivisionSharesMidpoints) {
  const TriangleMesh cube = MakeCube(100.0);
  // Closed mesh: V' = V + E and E = 3F / 2 at every level.
  const TriangleMesh once = Subdivide(cube, 1);
  EXPECT_EQ(once.vertices.size(), 8u + 18u);
  EXPECT_EQ(once.triangles.size(), 48u);
  const TriangleMesh thrice = Subdivide(cube, 3);
  EXPECT_EQ(thrice.vertices.size(), 386u);
  EXPECT_NO_THROW(thrice.Validate());
  EXPECT_NEAR(MeshDiameter(thrice), MeshDiameter(cube), 1e-9);
  for (const auto& v : thrice.vertices) EXPECT_NEAR(v.cwiseAbs().maxCoeff(), 50.0, 1e-12);
}

TEST(Mesh, TransformedMovesVertices) {
  std::mt19937_64 rng(2);
  const RigidPose pose = RandomPose(rng);
  const TriangleMesh cube = MakeCube(20.0);
  const TriangleMesh moved = cube.Transformed(pose);
  for (std::size_t i = 0; i < cube.vertices.size(); ++i) {
    EXPECT_LT((moved.vertices[i] - pose * cube.vertices[i]).norm(), 1e-12);
  }
  EXPECT_LT((moved.VertexCentroid() - pose.translation).norm(), 1e-9);
}

TEST(Error, CodesHaveNames) {
  EXPECT_EQ(ErrorCodeName(ErrorCode::kParseError), "ParseError");
  const ParseError e(ParseError::Unit::kLine, 12, "bad");
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_EQ(e.position(), 12);
}

}  // namespace
}  // namespace pose_forge
