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

#ifndef POSE_FORGE_FITTING_PNP_H_
#define POSE_FORGE_FITTING_PNP_H_

#include <optional>
#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/correspondence.h"
#include "pose_forge/core/geometry.h"

namespace pose_forge {

// Kneip's closed-form P3P. Returns every proper, cheiral solution that
// reprojects the three points within kP3PResidualTolerance; may be empty.
// Throws DegenerateSample for collinear model points.
inline constexpr double kP3PResidualTolerance = 1e-6;  // px
std::vector<RigidPose> SolveP3P(const Correspondence& a, const Correspondence& b,
                                const Correspondence& c,
                                const CameraIntrinsics& camera);

// As SolveP3P but also throws NoSolution when nothing survives.
std::vector<RigidPose> SolveP3POrThrow(const Correspondence& a,
                                       const Correspondence& b,
                                       const Correspondence& c,
                                       const CameraIntrinsics& camera);

// Smallest / largest eigenvalue of the model-point covariance below which
// EPnP refuses the input as planar.
inline constexpr double kNearPlanarRatio = 1e-8;

// EPnP with four PCA-aligned control points and Gauss-Newton refinement of
// the null-space weights. `indices` selects a subset; empty means all.
// Throws TooFewPoints (< 4) and NearPlanarConfiguration.
RigidPose SolveEPnP(std::span<const Correspondence> correspondences,
                    const CameraIntrinsics& camera,
                    std::span<const int> indices = {});

struct RefineOptions {
  int max_iterations = 50;
  double relative_cost_tolerance = 1e-9;
};

// Levenberg-Marquardt on the sum of squared reprojection errors over the
// selected correspondences. Never returns a pose with higher cost than the
// input. Throws TooFewPoints (< 3).
RigidPose RefinePose(const RigidPose& initial,
                     std::span<const Correspondence> correspondences,
                     const CameraIntrinsics& camera,
                     std::span<const int> indices = {},
                     const RefineOptions& options = {});

// Non-minimal refit used inside the robust estimators: EPnP on the selected
// correspondences (skipped when planar or fewer than 4), then LM started
// from whichever of the EPnP pose and `current` has lower cost. Returns
// `current` refined by LM alone when EPnP is unavailable, nullopt when
// fewer than 3 correspondences are selected.
std::optional<RigidPose> RefitPose(const RigidPose& current,
                                   std::span<const Correspondence> correspondences,
                                   const CameraIntrinsics& camera,
                                   std::span<const int> indices);

// Sum of squared reprojection errors; +inf if any point is not in front.
double ReprojectionCost(const RigidPose& pose,
                        std::span<const Correspondence> correspondences,
                        const CameraIntrinsics& camera,
                        std::span<const int> indices = {});

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_PNP_H_
