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

#ifndef POSE_FORGE_FITTING_GC_RANSAC_H_
#define POSE_FORGE_FITTING_GC_RANSAC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/fitting/correspondence_set.h"
#include "pose_forge/fitting/neighborhood_graph.h"

namespace pose_forge {

struct PoseHypothesis {
  RigidPose pose;
  double quality = 0.0;
  std::vector<int> inliers;  // indices with reprojection error below the threshold
};

struct FittingParams {
  double inlier_threshold = 4.0;      // px
  int max_iterations = 400;           // sampling budget
  double quality_threshold = 0.5;     // min quality to run local optimization
  double min_triangle_area = 100.0;   // px^2, smaller samples are degenerate
  double neighborhood_radius = 20.0;  // px, neighborhood graph
  double spatial_weight = 0.1;        // Potts weight of the graph cuts
  int local_optimization_rounds = 10;
  std::uint64_t seed = 0;

  // Throws InvalidArgument on non-positive thresholds or iteration counts.
  void Validate() const;
};

struct GcRansacStats {
  int iterations = 0;
  int degenerate_samples = 0;
  int minimal_solutions = 0;
  int local_optimizations = 0;
};

// Single-instance robust fitting. With non-empty `explained_errors` the
// multi-instance quality is maximized instead. `graph` may be null, in
// which case it is built from the set. Throws TooFewPoints (< 3) and
// NoHypothesis when no sample produced a pose.
PoseHypothesis GcRansac(const CorrespondenceSet& set,
                        const CameraIntrinsics& camera,
                        const FittingParams& params,
                        const NeighborhoodGraph* graph = nullptr,
                        std::span<const double> explained_errors = {},
                        GcRansacStats* stats = nullptr);

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_GC_RANSAC_H_
