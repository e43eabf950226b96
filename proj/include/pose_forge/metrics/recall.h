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

#ifndef POSE_FORGE_METRICS_RECALL_H_
#define POSE_FORGE_METRICS_RECALL_H_

#include <functional>
#include <span>
#include <vector>

#include "pose_forge/core/geometry.h"

namespace pose_forge {

inline constexpr double kDefaultVisibilityCutoff = 0.1;

struct GroundTruthInstance {
  int object_id = 0;
  RigidPose pose;
  double visible_fraction = 1.0;
};

struct PoseEstimate {
  int object_id = 0;
  RigidPose pose;
  double score = 0.0;
};

// Greedy matching within one image. Estimates are visited by decreasing
// score (ties: lower index first); each claims the unclaimed eligible
// ground truth of its object with the smallest error (ties: lower index).
// errors[e][g] is the error of estimate e w.r.t. ground truth g (only read
// for matching object ids). Returns, per ground truth, the claiming
// estimate or -1.
std::vector<int> GreedyMatch(std::span<const PoseEstimate> estimates,
                             std::span<const GroundTruthInstance> ground_truth,
                             const std::vector<std::vector<double>>& errors,
                             double visibility_cutoff = kDefaultVisibilityCutoff);

struct RecallCounts {
  long correct = 0;
  long eligible = 0;
  double recall() const { return eligible > 0 ? double(correct) / eligible : 0.0; }
  RecallCounts& operator+=(const RecallCounts& o) {
    correct += o.correct;
    eligible += o.eligible;
    return *this;
  }
};

// Counts for one image given a precomputed match: matched pairs with
// error < threshold are correct.
RecallCounts CountCorrect(std::span<const GroundTruthInstance> ground_truth,
                          const std::vector<std::vector<double>>& errors,
                          const std::vector<int>& match, double threshold,
                          double visibility_cutoff = kDefaultVisibilityCutoff);

using PoseErrorFn =
    std::function<double(const PoseEstimate&, const GroundTruthInstance&)>;

// Match and score one image.
RecallCounts MatchAndRecall(std::span<const PoseEstimate> estimates,
                            std::span<const GroundTruthInstance> ground_truth,
                            const PoseErrorFn& error, double threshold,
                            double visibility_cutoff = kDefaultVisibilityCutoff);

// Threshold grids of the Average Recall protocol.
std::vector<double> VsdToleranceFractions();  // tau / diameter: 0.05..0.5
std::vector<double> VsdThresholds();          // 0.05..0.5
std::vector<double> MssdThresholdFractions(); // theta / diameter: 0.05..0.5
std::vector<double> MspdThresholds(int image_width);  // 5r..50r, r = w/640

double Mean(std::span<const double> values);

struct AverageRecall {
  double vsd = 0.0;
  double mssd = 0.0;
  double mspd = 0.0;
  double Combined() const { return (vsd + mssd + mspd) / 3.0; }
};

}  // namespace pose_forge

#endif  // POSE_FORGE_METRICS_RECALL_H_
