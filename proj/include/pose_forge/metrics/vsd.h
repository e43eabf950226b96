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

#ifndef POSE_FORGE_METRICS_VSD_H_
#define POSE_FORGE_METRICS_VSD_H_

#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/image.h"
#include "pose_forge/core/mesh.h"

namespace pose_forge {

inline constexpr double kDefaultVsdTau = 20.0;        // mm
inline constexpr double kDefaultVsdDelta = 15.0;      // mm
inline constexpr double kSisoVsdThreshold = 0.3;      // single-setting mode

// VSD from already rendered distance maps and the scene distance map, one
// value per misalignment tolerance in `taus`. Masks are computed once.
// An empty mask union scores 1. Throws DimensionMismatch.
std::vector<double> VsdErrors(const DistanceMap& estimate,
                              const DistanceMap& ground_truth,
                              const DistanceMap& scene,
                              std::span<const double> taus,
                              double delta = kDefaultVsdDelta);

double VsdError(const DistanceMap& estimate, const DistanceMap& ground_truth,
                const DistanceMap& scene, double tau = kDefaultVsdTau,
                double delta = kDefaultVsdDelta);

// Renders both poses, then as above. `scene` is a distance map (convert
// depth images with DepthToDistance first).
double VsdError(const TriangleMesh& mesh, const RigidPose& est,
                const RigidPose& gt, const CameraIntrinsics& camera,
                const DistanceMap& scene, double tau = kDefaultVsdTau,
                double delta = kDefaultVsdDelta);

}  // namespace pose_forge

#endif  // POSE_FORGE_METRICS_VSD_H_
