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

#include "pose_forge/metrics/symmetry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Rotation taking +z to `dir`, followed by nothing else (minimal arc).
Eigen::Matrix3d AlignZ(const Eigen::Vector3d& dir) {
  return Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), dir)
      .toRotationMatrix();
}

RigidPose AboutCentroid(const Eigen::Matrix3d& rotation,
                        const Eigen::Vector3d& centroid) {
  RigidPose pose;
  pose.rotation = rotation;
  pose.translation = centroid - rotation * centroid;
  return pose;
}

// Point-to-point ICP of transform(V) onto V.
RigidPose Refine(std::span<const Eigen::Vector3d> vertices, RigidPose pose,
                 const KdTree& tree, int iterations) {
  const int n = static_cast<int>(vertices.size());
  std::vector<int> match(n);
  for (int it = 0; it < iterations; ++it) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const int j = tree.Nearest(pose * vertices[i], nullptr);
      if (j != match[i] || it == 0) changed = true;
      match[i] = j;
    }
    if (!changed) break;
    Eigen::Vector3d src_mean = Eigen::Vector3d::Zero();
    Eigen::Vector3d dst_mean = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) {
      src_mean += vertices[i];
      dst_mean += vertices[match[i]];
    }
    src_mean /= n;
    dst_mean /= n;
    Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
    for (int i = 0; i < n; ++i) {
      cross += (vertices[match[i]] - dst_mean) *
               (vertices[i] - src_mean).transpose();
    }
    pose.rotation = ProjectToRotation(cross);
    pose.translation = dst_mean - pose.rotation * src_mean;
  }
  return pose;
}

}  // namespace

double SymmetryTolerance(double diameter) {
  return std::max(15.0, 0.1 * diameter);
}

std::vector<Eigen::Vector3d> SphereDirections(int count) {
  std::vector<Eigen::Vector3d> dirs;
  dirs.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

double DirectedHausdorff(std::span<const Eigen::Vector3d> points,
                         const RigidPose& transform, const KdTree& target,
                         double stop_at) {
  double worst_sq = 0.0;
  const double stop_sq = stop_at > 0.0 ? stop_at * stop_at : 0.0;
  for (const auto& x : points) {
    double d_sq = 0.0;
    target.Nearest(transform * x, &d_sq);
    worst_sq = std::max(worst_sq, d_sq);
    if (stop_sq > 0.0 && worst_sq >= stop_sq) break;
  }
  return std::sqrt(worst_sq);
}

double SymmetricHausdorff(std::span<const Eigen::Vector3d> vertices,
                          const RigidPose& transform, const KdTree& tree) {
  // h(TV -> V) and h(V -> TV) = h(T^-1 V -> V).
  return std::max(DirectedHausdorff(vertices, transform, tree),
                  DirectedHausdorff(vertices, transform.Inverse(), tree));
}

std::vector<RigidPose> DiscoverSymmetries(const TriangleMesh& mesh,
                                          const SymmetryOptions& options) {
  const std::vector<Eigen::Vector3d>& vertices = mesh.vertices;
  const double diameter = MeshDiameter(vertices);
  if (!(diameter > 0.0)) {
    throw Error(ErrorCode::kDegenerateMesh, "mesh vertices coincide");
  }
  const double eps =
      options.tolerance > 0.0 ? options.tolerance : SymmetryTolerance(diameter);
  const Eigen::Vector3d centroid = mesh.VertexCentroid();
  const KdTree tree(vertices);

  std::vector<Eigen::Vector3d> coarse;
  const int stride = std::max<int>(
      1, static_cast<int>(vertices.size()) / std::max(1, options.coarse_vertex_limit));
  for (std::size_t i = 0; i < vertices.size(); i += stride) {
    coarse.push_back(vertices[i]);
  }

  const int in_plane =
      std::max(1, static_cast<int>(std::lround(360.0 / options.in_plane_step_deg)));
  const std::vector<Eigen::Vector3d> dirs = SphereDirections(options.axis_samples);
  const int num_candidates = static_cast<int>(dirs.size()) * in_plane;

  // Coarse test over all candidates in parallel; survivors keep their
  // candidate order so the result is independent of scheduling.
  std::vector<char> passed(num_candidates, 0);
#pragma omp parallel for schedule(dynamic, 32)
  for (int c = 0; c < num_candidates; ++c) {
    const Eigen::Matrix3d rot =
        AlignZ(dirs[c / in_plane]) *
        Eigen::AngleAxisd((c % in_plane) * 2.0 * std::numbers::pi / in_plane,
                          Eigen::Vector3d::UnitZ())
            .toRotationMatrix();
    const RigidPose pose = AboutCentroid(rot, centroid);
    // A loose gate: refinement can still pull near misses in.
    passed[c] = DirectedHausdorff(coarse, pose, tree, 2.0 * eps) < 2.0 * eps;
  }

  std::vector<RigidPose> accepted{RigidPose::Identity()};
  const double dedup = options.dedup_angle_deg * kDegToRad;
  auto is_duplicate = [&](const Eigen::Matrix3d& rot) {
    for (const RigidPose& s : accepted) {
      if (RotationAngle(rot * s.rotation.transpose()) < dedup) return true;
    }
    return false;
  };
  for (int c = 0; c < num_candidates; ++c) {
    if (!passed[c]) continue;
    const Eigen::Matrix3d rot =
        AlignZ(dirs[c / in_plane]) *
        Eigen::AngleAxisd((c % in_plane) * 2.0 * std::numbers::pi / in_plane,
                          Eigen::Vector3d::UnitZ())
            .toRotationMatrix();
    if (is_duplicate(rot)) continue;
    const RigidPose refined = Refine(vertices, AboutCentroid(rot, centroid),
                                     tree, options.refine_iterations);
    if (is_duplicate(refined.rotation)) continue;
    if (SymmetricHausdorff(vertices, refined, tree) < eps) {
      accepted.push_back(refined);
    }
  }
  return accepted;
}

}  // namespace pose_forge
