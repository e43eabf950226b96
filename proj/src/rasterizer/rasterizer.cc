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

#include "pose_forge/rasterizer/rasterizer.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace pose_forge {
namespace {

constexpr double kMinDepth = 1e-6;

double Edge(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
            const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Evaluated with the endpoints in a fixed order, so the two triangles
// sharing an edge get exactly opposite values and no pixel on the edge is
// dropped by both.
double CanonicalEdge(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const Eigen::Vector2d& c) {
  if (b.x() < a.x() || (b.x() == a.x() && b.y() < a.y())) return -Edge(b, a, c);
  return Edge(a, b, c);
}

// With positive-area orientation in y-down image coordinates, edges running
// upwards are left edges and rightward horizontal edges are top edges.
bool IsTopLeft(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double dx = b.x() - a.x();
  const double dy = b.y() - a.y();
  return dy < 0.0 || (dy == 0.0 && dx > 0.0);
}

bool Covers(double w, bool top_left) { return w > 0.0 || (w == 0.0 && top_left); }

}  // namespace

RenderBuffers Rasterize(const TriangleMesh& mesh, const RigidPose& pose,
                        const CameraIntrinsics& camera) {
  const int width = camera.width;
  const int height = camera.height;
  RenderBuffers out{DistanceMap(width, height, 0.0),
                    DepthMap(width, height, 0.0), Image<int>(width, height, -1),
                    Image<Eigen::Vector3d>(width, height,
                                           Eigen::Vector3d::Zero())};
  if (mesh.triangles.empty()) return out;

  std::vector<Eigen::Vector3d> cam_points(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    cam_points[i] = pose * mesh.vertices[i];
  }
  const RigidPose inverse = pose.Inverse();

  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    std::array<Eigen::Vector3d, 3> p = {cam_points[tri[0]], cam_points[tri[1]],
                                        cam_points[tri[2]]};
    if (p[0].z() <= kMinDepth || p[1].z() <= kMinDepth ||
        p[2].z() <= kMinDepth) {
      continue;
    }
    std::array<Eigen::Vector2d, 3> q = {camera.ProjectCameraPoint(p[0]),
                                        camera.ProjectCameraPoint(p[1]),
                                        camera.ProjectCameraPoint(p[2])};
    double area = Edge(q[0], q[1], q[2]);
    if (area == 0.0 || !std::isfinite(area)) continue;
    if (area < 0.0) {
      std::swap(q[1], q[2]);
      std::swap(p[1], p[2]);
    }
    const Eigen::Vector3d normal = (p[1] - p[0]).cross(p[2] - p[0]);
    const double plane_offset = normal.dot(p[0]);

    const double min_x = std::min({q[0].x(), q[1].x(), q[2].x()});
    const double max_x = std::max({q[0].x(), q[1].x(), q[2].x()});
    const double min_y = std::min({q[0].y(), q[1].y(), q[2].y()});
    const double max_y = std::max({q[0].y(), q[1].y(), q[2].y()});
    const int u0 = std::max(0, static_cast<int>(std::ceil(min_x)));
    const int u1 = std::min(width - 1, static_cast<int>(std::floor(max_x)));
    const int v0 = std::max(0, static_cast<int>(std::ceil(min_y)));
    const int v1 = std::min(height - 1, static_cast<int>(std::floor(max_y)));
    if (u0 > u1 || v0 > v1) continue;

    const bool tl0 = IsTopLeft(q[1], q[2]);
    const bool tl1 = IsTopLeft(q[2], q[0]);
    const bool tl2 = IsTopLeft(q[0], q[1]);

    for (int v = v0; v <= v1; ++v) {
      const double ry = (v - camera.cy) / camera.fy;
      for (int u = u0; u <= u1; ++u) {
        const Eigen::Vector2d c(u, v);
        if (!Covers(CanonicalEdge(q[1], q[2], c), tl0) ||
            !Covers(CanonicalEdge(q[2], q[0], c), tl1) ||
            !Covers(CanonicalEdge(q[0], q[1], c), tl2)) {
          continue;
        }
        const Eigen::Vector3d ray((u - camera.cx) / camera.fx, ry, 1.0);
        const double denom = normal.dot(ray);
        if (denom == 0.0) continue;
        const double z = plane_offset / denom;
        if (!(z > 0.0)) continue;
        double& depth = out.depth(u, v);
        if (depth != 0.0 && !(z < depth)) continue;
        depth = z;
        out.distance(u, v) = z * ray.norm();
        out.triangle(u, v) = t;
        out.model_point(u, v) = inverse * (z * ray);
      }
    }
  }
  return out;
}

DistanceMap RenderDistanceMap(const TriangleMesh& mesh, const RigidPose& pose,
                              const CameraIntrinsics& camera) {
  return Rasterize(mesh, pose, camera).distance;
}

DepthMap RenderDepthMap(const TriangleMesh& mesh, const RigidPose& pose,
                        const CameraIntrinsics& camera) {
  return Rasterize(mesh, pose, camera).depth;
}

}  // namespace pose_forge
