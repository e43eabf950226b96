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

#ifndef POSE_FORGE_CORE_MESH_H_
#define POSE_FORGE_CORE_MESH_H_

#include <array>
#include <vector>

#include <Eigen/Core>

#include "pose_forge/core/geometry.h"

namespace pose_forge {

// Triangle mesh in model coordinates (mm). Normals are optional; when
// present there is one unit normal per vertex.
struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Eigen::Vector3d> normals;

  // Throws ValidationError on out-of-range triangle indices or a normal
  // count that differs from the vertex count.
  void Validate() const;

  Eigen::Vector3d VertexCentroid() const;

  TriangleMesh Transformed(const RigidPose& pose) const;
};

// Largest pairwise vertex distance. Exact: pairs are visited in order of
// decreasing centroid radius and pruned with the triangle inequality.
// Throws DegenerateMesh for fewer than two vertices.
double MeshDiameter(const TriangleMesh& mesh);
double MeshDiameter(const std::vector<Eigen::Vector3d>& points);

// Axis-aligned cube centered at the origin with the given side length.
TriangleMesh MakeCube(double side);

// Closed prism whose cross-section is a regular polygon with `sides`
// vertices of circumradius `radius`, extruded along z over [-h/2, h/2].
TriangleMesh MakePrism(int sides, double radius, double height);

// Splits every triangle into four at its edge midpoints, `levels` times.
// Midpoints are shared between neighbors; normals are dropped.
TriangleMesh Subdivide(const TriangleMesh& mesh, int levels);

}  // namespace pose_forge

#endif  // POSE_FORGE_CORE_MESH_H_
