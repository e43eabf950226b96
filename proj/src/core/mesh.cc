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

#include "pose_forge/core/mesh.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "pose_forge/core/error.h"

namespace pose_forge {

void TriangleMesh::Validate() const {
  const int n = static_cast<int>(vertices.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    for (int index : triangles[i]) {
      if (index < 0 || index >= n) {
        std::ostringstream msg;
        msg << "triangle " << i << " references vertex " << index
            << " but the mesh has " << n << " vertices";
        throw Error(ErrorCode::kValidationError, msg.str());
      }
    }
  }
  if (!normals.empty() && normals.size() != vertices.size()) {
    throw Error(ErrorCode::kValidationError,
                "normal count does not match vertex count");
  }
}

Eigen::Vector3d TriangleMesh::VertexCentroid() const {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const auto& v : vertices) sum += v;
  return vertices.empty() ? sum : Eigen::Vector3d(sum / vertices.size());
}

TriangleMesh TriangleMesh::Transformed(const RigidPose& pose) const {
  TriangleMesh out = *this;
  for (auto& v : out.vertices) v = pose * v;
  for (auto& n : out.normals) n = pose.rotation * n;
  return out;
}

double MeshDiameter(const std::vector<Eigen::Vector3d>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) {
    throw Error(ErrorCode::kDegenerateMesh,
                "diameter needs at least two vertices");
  }
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= n;

  std::vector<double> radius(n);
  for (int i = 0; i < n; ++i) radius[i] = (points[i] - centroid).norm();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return radius[a] > radius[b]; });

  // |p_i - p_j| <= r_i + r_j, so once r_i + r_j cannot beat the running
  // maximum the rest of the (sorted) row is skipped.
  double best_sq = 0.0;
#pragma omp parallel
  {
    double local_sq = 0.0;
#pragma omp for schedule(dynamic, 16)
    for (int a = 0; a < n - 1; ++a) {
      const int i = order[a];
      const double ri = radius[i];
      for (int b = a + 1; b < n; ++b) {
        const int j = order[b];
        const double bound = ri + radius[j];
        if (bound * bound <= local_sq) break;
        local_sq = std::max(local_sq, (points[i] - points[j]).squaredNorm());
      }
    }
#pragma omp critical
    best_sq = std::max(best_sq, local_sq);
  }
  return std::sqrt(best_sq);
}

double MeshDiameter(const TriangleMesh& mesh) {
  return MeshDiameter(mesh.vertices);
}

TriangleMesh MakeCube(double side) {
  const double h = side / 2.0;
  TriangleMesh mesh;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back((i & 1) ? h : -h, (i & 2) ? h : -h,
                               (i & 4) ? h : -h);
  }
  // Two triangles per face, outward winding.
  mesh.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6},
                    {0, 1, 4}, {1, 5, 4}, {2, 6, 3}, {3, 6, 7},
                    {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return mesh;
}

TriangleMesh MakePrism(int sides, double radius, double height) {
  if (sides < 3) {
    throw Error(ErrorCode::kInvalidArgument, "prism needs at least 3 sides");
  }
  TriangleMesh mesh;
  const double h = height / 2.0;
  for (int ring = 0; ring < 2; ++ring) {
    const double z = ring == 0 ? -h : h;
    for (int k = 0; k < sides; ++k) {
      const double a = 2.0 * M_PI * k / sides;
      mesh.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
    }
  }
  for (int k = 0; k < sides; ++k) {
    const int k1 = (k + 1) % sides;
    mesh.triangles.push_back({k, k1, sides + k1});
    mesh.triangles.push_back({k, sides + k1, sides + k});
  }
  // Caps as fans from the first vertex of each ring.
  for (int k = 1; k + 1 < sides; ++k) {
    mesh.triangles.push_back({0, k + 1, k});
    mesh.triangles.push_back({sides, sides + k, sides + k + 1});
  }
  return mesh;
}

TriangleMesh Subdivide(const TriangleMesh& mesh, int levels) {
  if (levels < 0) throw Error(ErrorCode::kInvalidArgument, "negative subdivision level");
  TriangleMesh out;
  out.vertices = mesh.vertices;
  out.triangles = mesh.triangles;
  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      const auto [it, inserted] = midpoints.try_emplace(key, 0);
      if (inserted) {
        it->second = static_cast<int>(out.vertices.size());
        out.vertices.push_back(0.5 * (out.vertices[a] + out.vertices[b]));
      }
      return it->second;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(out.triangles.size() * 4);
    for (const auto& t : out.triangles) {
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    out.triangles = std::move(next);
  }
  return out;
}

}  // namespace pose_forge
