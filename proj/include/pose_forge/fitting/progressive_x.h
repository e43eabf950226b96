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

#ifndef POSE_FORGE_FITTING_PROGRESSIVE_X_H_
#define POSE_FORGE_FITTING_PROGRESSIVE_X_H_

#include <span>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/fitting/correspondence_set.h"
#include "pose_forge/fitting/gc_ransac.h"

namespace pose_forge {

// |A n B| / |A u B| for sorted index sets; 0 when both are empty.
double JaccardIndex(std::span<const int> a, std::span<const int> b);

// Sorted union of the inlier sets of `hypotheses`.
std::vector<int> UnionOfInliers(std::span<const PoseHypothesis> hypotheses);

struct MultiFittingParams {
  FittingParams fitting;
  double jaccard_threshold = 0.8;     // reject proposals this similar
  double instance_probability = 0.5;  // continue while above this
  int max_instances = 0;              // 0 = unlimited
  double label_cost_fraction = 0.05;  // label cost per correspondence
  int max_proposals = 32;             // hard cap on proposal rounds

  void Validate() const;
};

// Probability that another instance remains given the latest proposal
// explained `unexplained` new correspondences out of `total`:
// 1 - (1 - w^3)^iterations with w = unexplained / total.
double AnotherInstanceProbability(int unexplained, int total, int iterations);

struct ProgressiveXStats {
  int proposals = 0;
  int rejected_similar = 0;
  int consolidations = 0;
};

// Multi-instance fitting: proposals from GC-RANSAC under the
// multi-instance quality, kept when dissimilar enough from the current set,
// consolidated by PEARL. Each returned hypothesis carries its single-
// instance quality and inliers. Throws TooFewPoints (< 3).
std::vector<PoseHypothesis> ProgressiveX(const CorrespondenceSet& set,
                                         const CameraIntrinsics& camera,
                                         const MultiFittingParams& params,
                                         ProgressiveXStats* stats = nullptr);

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_PROGRESSIVE_X_H_
