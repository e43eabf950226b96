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

#ifndef POSE_FORGE_FITTING_QUALITY_H_
#define POSE_FORGE_FITTING_QUALITY_H_

#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/correspondence.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/fitting/correspondence_set.h"

namespace pose_forge {

inline constexpr double kDefaultInlierThreshold = 4.0;  // px

// ||u - proj(R x + t)||, or +inf when the point is not in front of the camera.
double ReprojectionError(const Correspondence& c, const RigidPose& pose,
                         const CameraIntrinsics& camera);

std::vector<double> ReprojectionErrors(const CorrespondenceSet& set,
                                       const RigidPose& pose,
                                       const CameraIntrinsics& camera);

// Per-correspondence minimum error over `hypotheses`; +inf if empty.
std::vector<double> ExplainedErrors(const CorrespondenceSet& set,
                                    std::span<const RigidPose> hypotheses,
                                    const CameraIntrinsics& camera);

// Truncated quadratic kernel max(0, 1 - e^2 / tau^2).
inline double TruncatedQuadratic(double error, double tau) {
  const double k = 1.0 - (error * error) / (tau * tau);
  return k > 0.0 ? k : 0.0;
}

// Single-instance quality: mean over pixels of the best correspondence's
// truncated-quadratic score. Empty set gives 0.
double QualitySingle(const CorrespondenceSet& set,
                     std::span<const double> errors, double tau);

// Multi-instance quality: per correspondence the score is
// max(0, min(1 - e^2/tau^2, e'^2/tau^2)) where e' is the explained error.
double QualityMulti(const CorrespondenceSet& set, std::span<const double> errors,
                    std::span<const double> explained_errors, double tau);

double QualitySingle(const CorrespondenceSet& set, const RigidPose& pose,
                     const CameraIntrinsics& camera, double tau);
double QualityMulti(const CorrespondenceSet& set, const RigidPose& pose,
                    std::span<const RigidPose> hypotheses,
                    const CameraIntrinsics& camera, double tau);

// Indices with error < tau.
std::vector<int> InlierIndices(std::span<const double> errors, double tau);

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_QUALITY_H_
