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

#ifndef POSE_FORGE_METRICS_SYMMETRY_H_
#define POSE_FORGE_METRICS_SYMMETRY_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pose_forge/core/geometry.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/metrics/kd_tree.h"

namespace pose_forge {

// max(15 mm, 0.1 * diameter).
double SymmetryTolerance(double diameter);

struct SymmetryOptions {
  double tolerance = 0.0;          // <= 0: SymmetryTolerance(diameter)
  int axis_samples = 312;          // directions for the rotated z axis
  double in_plane_step_deg = 6.0;
  double dedup_angle_deg = 3.0;
  int refine_iterations = 30;
  // Vertices used by the coarse pre-test; all vertices are always used
  // for the final acceptance test.
  int coarse_vertex_limit = 2000;
};

// max over x in `points` of the distance from transform(x) to the nearest
// point indexed by `target`. Stops early once the running value reaches
// `stop_at` (the returned value is then only a lower bound).
double DirectedHausdorff(std::span<const Eigen::Vector3d> points,
                         const RigidPose& transform, const KdTree& target,
                         double stop_at = 0.0);

// Symmetric Hausdorff distance between the vertex set and its image.
double SymmetricHausdorff(std::span<const Eigen::Vector3d> vertices,
                          const RigidPose& transform, const KdTree& tree);

// Global symmetries of the vertex set: candidate rotations about the
// vertex centroid, refined by ICP, accepted when the symmetric Hausdorff
// distance is below the tolerance. Identity comes first. Throws
// DegenerateMesh for fewer than 2 distinct vertices.
std::vector<RigidPose> DiscoverSymmetries(const TriangleMesh& mesh,
                                          const SymmetryOptions& options = {});

// Evenly spread unit directions (spherical Fibonacci lattice).
std::vector<Eigen::Vector3d> SphereDirections(int count);

}  // namespace pose_forge

#endif  // POSE_FORGE_METRICS_SYMMETRY_H_
