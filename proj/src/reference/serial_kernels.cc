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

#include "pose_forge/reference/serial_kernels.h"

#include <algorithm>
#include <limits>

#include "pose_forge/core/error.h"
#include "pose_forge/fitting/neighborhood_graph.h"

namespace pose_forge::reference {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double MeshDiameter(std::span<const Eigen::Vector3d> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kDegenerateMesh, "diameter needs two vertices");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, (points[i] - points[j]).norm());
    }
  }
  return best;
}

std::vector<int> FarthestPointSampling(std::span<const Eigen::Vector3d> points, int n) {
  const int m = static_cast<int>(points.size());
  if (n < 1 || m < n) throw Error(ErrorCode::kTooFewVertices, "too few vertices");
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= m;

  std::vector<Eigen::Vector3d> chosen = {centroid};
  std::vector<int> picks;
  std::vector<char> taken(m, 0);
  for (int k = 0; k < n; ++k) {
    int best = -1;
    double best_dist = -1.0;
    for (int i = 0; i < m; ++i) {
      if (taken[i]) continue;
      double d = kInf;
      for (const auto& c : chosen) d = std::min(d, (points[i] - c).norm());
      if (d > best_dist) {
        best_dist = d;
        best = i;
      }
    }
    taken[best] = 1;
    picks.push_back(best);
    chosen.push_back(points[best]);
  }
  return picks;
}

std::vector<int> AssignFragments(std::span<const Eigen::Vector3d> points,
                                 std::span<const Eigen::Vector3d> centers) {
  std::vector<int> out(points.size(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = kInf;
    for (std::size_t f = 0; f < centers.size(); ++f) {
      const double d = (points[i] - centers[f]).squaredNorm();
      if (d < best) {
        best = d;
        out[i] = static_cast<int>(f);
      }
    }
  }
  return out;
}

std::vector<std::pair<int, int>> NeighborhoodEdges(const CorrespondenceSet& set,
                                                   double radius) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < set.size(); ++i) {
    for (int j = i + 1; j < set.size(); ++j) {
      const double d = (NeighborhoodDescriptor(set[i]) - NeighborhoodDescriptor(set[j])).norm();
      if (d < radius) edges.emplace_back(i, j);
    }
  }
  return edges;
}

double AddError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptyModel, "no vertices");
  double sum = 0.0;
  for (const auto& x : vertices) sum += (gt * x - est * x).norm();
  return sum / vertices.size();
}

double AdiError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptyModel, "no vertices");
  double sum = 0.0;
  for (const auto& x1 : vertices) {
    const Eigen::Vector3d a = gt * x1;
    double best = kInf;
    for (const auto& x2 : vertices) best = std::min(best, (a - est * x2).norm());
    sum += best;
  }
  return sum / vertices.size();
}

double MssdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptyModel, "no vertices");
  double best = kInf;
  for (const RigidPose& s : symmetries) {
    double worst = 0.0;
    for (const auto& x : vertices) {
      worst = std::max(worst, (est * x - gt * (s * x)).norm());
    }
    best = std::min(best, worst);
  }
  return best;
}

double MspdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices,
                 const CameraIntrinsics& camera) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptyModel, "no vertices");
  double best = kInf;
  for (const RigidPose& s : symmetries) {
    double worst = 0.0;
    for (const auto& x : vertices) {
      const Eigen::Vector3d a = est * x;
      const Eigen::Vector3d b = gt * (s * x);
      if (!(a.z() > 0.0) || !(b.z() > 0.0)) {
        worst = kInf;
        break;
      }
      const Eigen::Vector2d pa(camera.fx * a.x() / a.z() + camera.cx,
                               camera.fy * a.y() / a.z() + camera.cy);
      const Eigen::Vector2d pb(camera.fx * b.x() / b.z() + camera.cx,
                               camera.fy * b.y() / b.z() + camera.cy);
      worst = std::max(worst, (pa - pb).norm());
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace pose_forge::reference
