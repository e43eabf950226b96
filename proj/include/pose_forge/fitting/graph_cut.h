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

#ifndef POSE_FORGE_FITTING_GRAPH_CUT_H_
#define POSE_FORGE_FITTING_GRAPH_CUT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/fitting/correspondence_set.h"
#include "pose_forge/fitting/neighborhood_graph.h"

namespace pose_forge {

inline constexpr double kDefaultSpatialWeight = 0.1;  // Potts weight

struct LocalOptimizationOptions {
  double inlier_threshold = 4.0;
  double spatial_weight = kDefaultSpatialWeight;
  int max_rounds = 10;
};

// Binary inlier labeling energy for fixed errors:
// sum_p U_p(L_p) + w * #{edges with differing labels}, where
// U_p(inlier) = 1 - k(e_p) and U_p(outlier) = k(e_p).
double InlierLabelingEnergy(std::span<const double> errors,
                            const std::vector<std::uint8_t>& inlier_labels,
                            const NeighborhoodGraph& graph, double tau,
                            double spatial_weight);

// Exact minimizer of InlierLabelingEnergy by one min cut. 1 = inlier.
std::vector<std::uint8_t> MinimizeInlierLabeling(
    std::span<const double> errors, const NeighborhoodGraph& graph, double tau,
    double spatial_weight, double* energy = nullptr);

struct LocalOptimizationResult {
  RigidPose pose;
  double quality = 0.0;
  std::vector<int> inliers;  // graph-cut labeling of the returned pose
  // Labeling energy after each accepted alternation, non-increasing.
  std::vector<double> energy_trace;
  int rounds = 0;
};

// Alternates graph-cut labeling and refit on the inliers. Keeps the best
// pose by quality (single, or multi when `explained_errors` is non-empty),
// so the result is never worse than the input.
LocalOptimizationResult GraphCutLocalOptimize(
    const RigidPose& pose, const CorrespondenceSet& set,
    const NeighborhoodGraph& graph, const CameraIntrinsics& camera,
    const LocalOptimizationOptions& options = {},
    std::span<const double> explained_errors = {});

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_GRAPH_CUT_H_
