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

#include "pose_forge/fitting/pearl.h"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "pose_forge/fitting/max_flow.h"
#include "pose_forge/fitting/pnp.h"
#include "pose_forge/fitting/quality.h"

namespace pose_forge {
namespace {

int NumLabels(const PearlCosts& costs) {
  return static_cast<int>(costs.data.size());
}

// One expansion move for `alpha`; returns the candidate labeling.
std::vector<int> ExpansionMove(const PearlCosts& costs,
                               const std::vector<std::pair<int, int>>& edges,
                               const std::vector<int>& labels, int alpha) {
  const int n = static_cast<int>(labels.size());
  const double w = costs.spatial_weight;
  BinaryEnergy energy(n);
  for (int p = 0; p < n; ++p) {
    energy.AddUnary(p, costs.data[labels[p]][p], costs.data[alpha][p]);
  }
  if (w > 0.0) {
    for (const auto& [p, q] : edges) {
      const double e00 = labels[p] != labels[q] ? w : 0.0;
      const double e01 = labels[p] != alpha ? w : 0.0;
      const double e10 = alpha != labels[q] ? w : 0.0;
      energy.AddPairwise(p, q, e00, e01, e10, 0.0);
    }
  }
  const std::vector<std::uint8_t> move = energy.Minimize();
  std::vector<int> out = labels;
  for (int p = 0; p < n; ++p) {
    if (move[p]) out[p] = alpha;
  }
  return out;
}

// Moves every point of `label` to its cheapest other label in use.
std::vector<int> RemovalMove(const PearlCosts& costs,
                             const std::vector<int>& labels, int label) {
  std::vector<char> used(NumLabels(costs), 0);
  for (int l : labels) used[l] = 1;
  used[0] = 1;
  used[label] = 0;
  std::vector<int> out = labels;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (labels[p] != label) continue;
    int best = 0;
    for (int l = 1; l < NumLabels(costs); ++l) {
      if (used[l] && costs.data[l][p] < costs.data[best][p]) best = l;
    }
    out[p] = best;
  }
  return out;
}

double DataCost(double error, double tau) {
  return std::min(1.0, (error * error) / (tau * tau));
}

}  // namespace

PearlCosts BuildPearlCosts(const CorrespondenceSet& set,
                           std::span<const RigidPose> hypotheses,
                           const CameraIntrinsics& camera,
                           const PearlOptions& options) {
  PearlCosts costs;
  costs.spatial_weight = options.spatial_weight;
  costs.label_cost = options.label_cost_fraction * set.size();
  costs.data.assign(hypotheses.size() + 1,
                    std::vector<double>(set.size(), 1.0));
  for (std::size_t k = 0; k < hypotheses.size(); ++k) {
    for (int p = 0; p < set.size(); ++p) {
      costs.data[k + 1][p] = DataCost(
          ReprojectionError(set[p], hypotheses[k], camera),
          options.inlier_threshold);
    }
  }
  return costs;
}

double PearlEnergy(const PearlCosts& costs, const std::vector<int>& labels,
                   const NeighborhoodGraph& graph) {
  double e = 0.0;
  std::vector<char> used(NumLabels(costs), 0);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    e += costs.data[labels[p]][p];
    used[labels[p]] = 1;
  }
  for (int l = 1; l < NumLabels(costs); ++l) {
    if (used[l]) e += costs.label_cost;
  }
  for (int p = 0; p < graph.num_nodes(); ++p) {
    for (int q : graph.Neighbors(p)) {
      if (p < q && labels[p] != labels[q]) e += costs.spatial_weight;
    }
  }
  return e;
}

std::vector<double> AlphaExpansion(const PearlCosts& costs,
                                   const NeighborhoodGraph& graph,
                                   int max_sweeps, std::vector<int>* labels) {
  const auto edges = graph.Edges();
  double energy = PearlEnergy(costs, *labels, graph);
  std::vector<double> trace{energy};
  auto try_move = [&](std::vector<int> candidate) {
    const double e = PearlEnergy(costs, candidate, graph);
    if (e < energy - 1e-12) {
      *labels = std::move(candidate);
      energy = e;
      return true;
    }
    return false;
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (int alpha = 0; alpha < NumLabels(costs); ++alpha) {
      improved |= try_move(ExpansionMove(costs, edges, *labels, alpha));
    }
    for (int l = 1; l < NumLabels(costs); ++l) {
      if (std::find(labels->begin(), labels->end(), l) == labels->end()) continue;
      improved |= try_move(RemovalMove(costs, *labels, l));
    }
    trace.push_back(energy);
    if (!improved) break;
  }
  return trace;
}

PearlResult PearlConsolidate(std::span<const RigidPose> hypotheses,
                             const CorrespondenceSet& set,
                             const NeighborhoodGraph& graph,
                             const CameraIntrinsics& camera,
                             const PearlOptions& options) {
  std::vector<RigidPose> poses(hypotheses.begin(), hypotheses.end());
  const int num_hyp = static_cast<int>(poses.size());
  const int n = set.size();
  PearlCosts costs = BuildPearlCosts(set, poses, camera, options);

  // Start from the cheapest label per point; ties go to the lower label.
  std::vector<int> labels(n, 0);
  for (int p = 0; p < n; ++p) {
    for (int l = 1; l <= num_hyp; ++l) {
      if (costs.data[l][p] < costs.data[labels[p]][p]) labels[p] = l;
    }
  }

  PearlResult result;
  std::vector<int> previous;
  for (int round = 0; round < options.max_rounds; ++round) {
    const std::vector<double> trace =
        AlphaExpansion(costs, graph, options.max_sweeps, &labels);
    result.energy_trace.insert(result.energy_trace.end(),
                               round == 0 ? trace.begin() : trace.begin() + 1,
                               trace.end());
    if (labels == previous) break;
    previous = labels;

    // Refit each hypothesis on its assignment; keep a refit only if its
    // data cost over that assignment does not grow.
    bool changed = false;
    for (int k = 0; k < num_hyp; ++k) {
      std::vector<int> assigned;
      for (int p = 0; p < n; ++p) {
        if (labels[p] == k + 1) assigned.push_back(p);
      }
      if (assigned.size() < 3) continue;
      const auto refit =
          RefitPose(poses[k], set.correspondences(), camera, assigned);
      if (!refit) continue;
      double before = 0.0, after = 0.0;
      std::vector<double> new_costs(n);
      for (int p = 0; p < n; ++p) {
        new_costs[p] = DataCost(ReprojectionError(set[p], *refit, camera),
                                options.inlier_threshold);
      }
      for (int p : assigned) {
        before += costs.data[k + 1][p];
        after += new_costs[p];
      }
      if (after <= before) {
        poses[k] = *refit;
        costs.data[k + 1] = std::move(new_costs);
        changed = true;
      }
    }
    if (changed) result.energy_trace.push_back(PearlEnergy(costs, labels, graph));
  }

  for (int k = 0; k < num_hyp; ++k) {
    std::vector<int> assigned;
    for (int p = 0; p < n; ++p) {
      if (labels[p] == k + 1) assigned.push_back(p);
    }
    if (assigned.empty()) continue;
    result.poses.push_back(poses[k]);
    result.source_index.push_back(k);
    result.assigned.push_back(std::move(assigned));
  }
  return result;
}

}  // namespace pose_forge
