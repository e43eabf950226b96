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

#ifndef POSE_FORGE_FITTING_PEARL_H_
#define POSE_FORGE_FITTING_PEARL_H_

#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/geometry.h"
#include "pose_forge/fitting/correspondence_set.h"
#include "pose_forge/fitting/neighborhood_graph.h"

namespace pose_forge {

struct PearlOptions {
  double inlier_threshold = 4.0;
  double spatial_weight = 0.1;
  // Per-hypothesis label cost as a fraction of the correspondence count.
  double label_cost_fraction = 0.05;
  int max_sweeps = 5;       // alpha-expansion sweeps per labeling step
  int max_rounds = 10;      // labeling / refit alternations
};

// Label 0 is "outlier"; label k > 0 assigns to hypothesis k - 1.
struct PearlCosts {
  // data[k][p] for k in [0, K].
  std::vector<std::vector<double>> data;
  double spatial_weight = 0.0;
  double label_cost = 0.0;
};

PearlCosts BuildPearlCosts(const CorrespondenceSet& set,
                           std::span<const RigidPose> hypotheses,
                           const CameraIntrinsics& camera,
                           const PearlOptions& options);

// Data + Potts + label-cost energy of a labeling.
double PearlEnergy(const PearlCosts& costs, const std::vector<int>& labels,
                   const NeighborhoodGraph& graph);

// Alpha-expansion with label costs: round-robin expansion moves plus
// label-removal moves, each accepted only if it lowers the full energy.
// Returns the energy after every sweep (first entry: initial labeling).
std::vector<double> AlphaExpansion(const PearlCosts& costs,
                                   const NeighborhoodGraph& graph,
                                   int max_sweeps, std::vector<int>* labels);

struct PearlResult {
  std::vector<RigidPose> poses;            // surviving hypotheses
  std::vector<int> source_index;           // their index in the input
  std::vector<std::vector<int>> assigned;  // correspondences per survivor
  std::vector<double> energy_trace;
};

// Consolidates a hypothesis set: multi-label assignment, refit of each
// hypothesis on its assignment, repeated until the labeling is stable.
// Hypotheses left without assignments are dropped.
PearlResult PearlConsolidate(std::span<const RigidPose> hypotheses,
                             const CorrespondenceSet& set,
                             const NeighborhoodGraph& graph,
                             const CameraIntrinsics& camera,
                             const PearlOptions& options = {});

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_PEARL_H_
