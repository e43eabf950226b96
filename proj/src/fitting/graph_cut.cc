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

#include "pose_forge/fitting/graph_cut.h"

#include "pose_forge/fitting/max_flow.h"
#include "pose_forge/fitting/pnp.h"
#include "pose_forge/fitting/quality.h"

namespace pose_forge {
namespace {

BinaryEnergy LabelingEnergy(std::span<const double> errors,
                            const NeighborhoodGraph& graph, double tau,
                            double spatial_weight) {
  const int n = static_cast<int>(errors.size());
  BinaryEnergy energy(n);
  for (int i = 0; i < n; ++i) {
    const double k = TruncatedQuadratic(errors[i], tau);
    energy.AddUnary(i, /*outlier=*/k, /*inlier=*/1.0 - k);
  }
  if (spatial_weight > 0.0) {
    for (const auto& [i, j] : graph.Edges()) {
      energy.AddPairwise(i, j, 0.0, spatial_weight, spatial_weight, 0.0);
    }
  }
  return energy;
}

std::vector<int> LabeledInliers(const std::vector<std::uint8_t>& labels) {
  std::vector<int> inliers;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i]) inliers.push_back(i);
  }
  return inliers;
}

}  // namespace

double InlierLabelingEnergy(std::span<const double> errors,
                            const std::vector<std::uint8_t>& inlier_labels,
                            const NeighborhoodGraph& graph, double tau,
                            double spatial_weight) {
  return LabelingEnergy(errors, graph, tau, spatial_weight)
      .Evaluate(inlier_labels);
}

std::vector<std::uint8_t> MinimizeInlierLabeling(std::span<const double> errors,
                                                 const NeighborhoodGraph& graph,
                                                 double tau,
                                                 double spatial_weight,
                                                 double* energy) {
  return LabelingEnergy(errors, graph, tau, spatial_weight).Minimize(energy);
}

LocalOptimizationResult GraphCutLocalOptimize(
    const RigidPose& pose, const CorrespondenceSet& set,
    const NeighborhoodGraph& graph, const CameraIntrinsics& camera,
    const LocalOptimizationOptions& options,
    std::span<const double> explained_errors) {
  const double tau = options.inlier_threshold;
  auto quality = [&](std::span<const double> errors) {
    return explained_errors.empty()
               ? QualitySingle(set, errors, tau)
               : QualityMulti(set, errors, explained_errors, tau);
  };

  std::vector<double> errors = ReprojectionErrors(set, pose, camera);
  double energy = 0.0;
  std::vector<std::uint8_t> labels = MinimizeInlierLabeling(
      errors, graph, tau, options.spatial_weight, &energy);

  LocalOptimizationResult result;
  result.pose = pose;
  result.quality = quality(errors);
  result.inliers = LabeledInliers(labels);
  result.energy_trace.push_back(energy);

  RigidPose current = pose;
  std::vector<int> previous_inliers;
  std::vector<int> inliers = result.inliers;
  for (int round = 0; round < options.max_rounds; ++round) {
    if (round > 0 && inliers == previous_inliers) break;
    result.rounds = round + 1;
    const auto refit = RefitPose(current, set.correspondences(), camera, inliers);
    if (!refit) break;
    std::vector<double> next_errors = ReprojectionErrors(set, *refit, camera);
    double next_energy = 0.0;
    std::vector<std::uint8_t> next_labels = MinimizeInlierLabeling(
        next_errors, graph, tau, options.spatial_weight, &next_energy);
    // A refit that raises the labeling energy ends the alternation.
    if (next_energy > energy) break;

    previous_inliers = std::move(inliers);
    inliers = LabeledInliers(next_labels);
    current = *refit;
    energy = next_energy;
    result.energy_trace.push_back(energy);
    const double q = quality(next_errors);
    if (q > result.quality) {
      result.quality = q;
      result.pose = current;
      result.inliers = inliers;
    }
  }
  return result;
}

}  // namespace pose_forge
