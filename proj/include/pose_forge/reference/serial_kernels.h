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

#ifndef POSE_FORGE_REFERENCE_SERIAL_KERNELS_H_
#define POSE_FORGE_REFERENCE_SERIAL_KERNELS_H_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/core/mesh.h"
#include "pose_forge/fitting/correspondence_set.h"

// Straightforward single-threaded versions of the parallel kernels. Tests
// use them as oracles and the benchmark as the baseline; nothing in the
// library or the CLI links them.
namespace pose_forge::reference {

// All pairs.
double MeshDiameter(std::span<const Eigen::Vector3d> points);

// Same selection rule as the parallel version (centroid seed, lowest index
// on ties).
std::vector<int> FarthestPointSampling(std::span<const Eigen::Vector3d> points, int n);

std::vector<int> AssignFragments(std::span<const Eigen::Vector3d> points,
                                 std::span<const Eigen::Vector3d> centers);

// Every pair (i < j) whose descriptors are closer than `radius`.
std::vector<std::pair<int, int>> NeighborhoodEdges(const CorrespondenceSet& set,
                                                   double radius);

double AddError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices);
// Double loop over all vertex pairs.
double AdiError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices);
double MssdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices);
double MspdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices,
                 const CameraIntrinsics& camera);

}  // namespace pose_forge::reference

#endif  // POSE_FORGE_REFERENCE_SERIAL_KERNELS_H_
