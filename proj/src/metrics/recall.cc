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

#include "pose_forge/metrics/recall.h"

#include <algorithm>
#include <numeric>

namespace pose_forge {
namespace {

// 5k * numerator / denominator for k = 1..10, each correctly rounded.
std::vector<double> Steps(double numerator, double denominator) {
  std::vector<double> out;
  for (int k = 1; k <= 10; ++k) out.push_back(5.0 * k * numerator / denominator);
  return out;
}

bool Eligible(const GroundTruthInstance& gt, double cutoff) {
  return gt.visible_fraction >= cutoff;
}

}  // namespace

std::vector<int> GreedyMatch(std::span<const PoseEstimate> estimates,
                             std::span<const GroundTruthInstance> ground_truth,
                             const std::vector<std::vector<double>>& errors,
                             double visibility_cutoff) {
  std::vector<int> order(estimates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return estimates[a].score > estimates[b].score;
  });
  std::vector<int> match(ground_truth.size(), -1);
  for (int e : order) {
    int best = -1;
    for (int g = 0; g < static_cast<int>(ground_truth.size()); ++g) {
      if (match[g] >= 0 || ground_truth[g].object_id != estimates[e].object_id ||
          !Eligible(ground_truth[g], visibility_cutoff)) {
        continue;
      }
      if (best < 0 || errors[e][g] < errors[e][best]) best = g;
    }
    if (best >= 0) match[best] = e;
  }
  return match;
}

RecallCounts CountCorrect(std::span<const GroundTruthInstance> ground_truth,
                          const std::vector<std::vector<double>>& errors,
                          const std::vector<int>& match, double threshold,
                          double visibility_cutoff) {
  RecallCounts counts;
  for (int g = 0; g < static_cast<int>(ground_truth.size()); ++g) {
    if (!Eligible(ground_truth[g], visibility_cutoff)) continue;
    ++counts.eligible;
    if (match[g] >= 0 && errors[match[g]][g] < threshold) ++counts.correct;
  }
  return counts;
}

RecallCounts MatchAndRecall(std::span<const PoseEstimate> estimates,
                            std::span<const GroundTruthInstance> ground_truth,
                            const PoseErrorFn& error, double threshold,
                            double visibility_cutoff) {
  std::vector<std::vector<double>> errors(
      estimates.size(), std::vector<double>(ground_truth.size(), 0.0));
  for (std::size_t e = 0; e < estimates.size(); ++e) {
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      if (estimates[e].object_id == ground_truth[g].object_id) {
        errors[e][g] = error(estimates[e], ground_truth[g]);
      }
    }
  }
  const std::vector<int> match =
      GreedyMatch(estimates, ground_truth, errors, visibility_cutoff);
  return CountCorrect(ground_truth, errors, match, threshold, visibility_cutoff);
}

std::vector<double> VsdToleranceFractions() { return Steps(1.0, 100.0); }
std::vector<double> VsdThresholds() { return Steps(1.0, 100.0); }
std::vector<double> MssdThresholdFractions() { return Steps(1.0, 100.0); }
std::vector<double> MspdThresholds(int image_width) {
  return Steps(image_width, 640.0);
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / values.size();
}

}  // namespace pose_forge
