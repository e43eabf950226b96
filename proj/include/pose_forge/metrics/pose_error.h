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

#ifndef POSE_FORGE_METRICS_POSE_ERROR_H_
#define POSE_FORGE_METRICS_POSE_ERROR_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/metrics/kd_tree.h"

namespace pose_forge {

// ||t_gt - t_est||, mm.
double TranslationError(const Eigen::Vector3d& t_est, const Eigen::Vector3d& t_gt);

// Angle of R_est * R_gt^T, radians in [0, pi].
double RotationError(const Eigen::Matrix3d& r_est, const Eigen::Matrix3d& r_gt);

// Mean distance between corresponding transformed vertices. Throws
// EmptyModel.
double AddError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices);

// Mean over ground-truth-posed vertices of the distance to the closest
// estimate-posed vertex. The tree must index `vertices` in the model frame;
// the second overload builds it.
double AdiError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices, const KdTree& tree);
double AdiError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices);

// Min over symmetries S of the max vertex distance between est(x) and
// gt(S(x)), mm.
double MssdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices);

// As MSSD but in the image, px. A symmetry candidate under which any vertex
// is not in front of the camera in either pose scores +inf.
double MspdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices,
                 const CameraIntrinsics& camera);

}  // namespace pose_forge

#endif  // POSE_FORGE_METRICS_POSE_ERROR_H_
