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

#include "pose_forge/fitting/gc_ransac.h"

#include <optional>
#include <sstream>

#include "pose_forge/core/error.h"
#include "pose_forge/fitting/graph_cut.h"
#include "pose_forge/fitting/pnp.h"
#include "pose_forge/fitting/prosac.h"
#include "pose_forge/fitting/quality.h"
#include "pose_forge/fitting/sample_checks.h"

namespace pose_forge {

void FittingParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(inlier_threshold > 0.0, "inlier threshold must be > 0");
  require(max_iterations > 0, "iteration budget must be > 0");
  require(quality_threshold >= 0.0 && quality_threshold <= 1.0,
          "quality threshold must lie in [0, 1]");
  require(min_triangle_area >= 0.0, "minimum triangle area must be >= 0");
  require(neighborhood_radius > 0.0, "neighborhood radius must be > 0");
  require(spatial_weight >= 0.0, "spatial weight must be >= 0");
  require(local_optimization_rounds >= 0, "round limit must be >= 0");
}

PoseHypothesis GcRansac(const CorrespondenceSet& set,
                        const CameraIntrinsics& camera,
                        const FittingParams& params,
                        const NeighborhoodGraph* graph,
                        std::span<const double> explained_errors,
                        GcRansacStats* stats) {
  params.Validate();
  if (set.size() < 3) {
    std::ostringstream msg;
    msg << "pose fitting needs at least 3 correspondences, got " << set.size();
    throw Error(ErrorCode::kTooFewPoints, msg.str());
  }
  NeighborhoodGraph own_graph;
  if (graph == nullptr) {
    own_graph = BuildNeighborhoodGraph(set, params.neighborhood_radius);
    graph = &own_graph;
  }
  const double tau = params.inlier_threshold;
  auto quality = [&](std::span<const double> errors) {
    return explained_errors.empty()
               ? QualitySingle(set, errors, tau)
               : QualityMulti(set, errors, explained_errors, tau);
  };

  LocalOptimizationOptions lo_options;
  lo_options.inlier_threshold = tau;
  lo_options.spatial_weight = params.spatial_weight;
  lo_options.max_rounds = params.local_optimization_rounds;

  GcRansacStats local_stats;
  const ProsacSampler sampler(set.size(), params.max_iterations, params.seed);
  const auto& order = set.confidence_order();
  const auto& corrs = set.correspondences();

  std::optional<PoseHypothesis> best;
  for (int t = 0; t < params.max_iterations; ++t) {
    ++local_stats.iterations;
    const auto idx = RanksToIndices(sampler.Sample(t), order);
    const Correspondence& a = set[idx[0]];
    const Correspondence& b = set[idx[1]];
    const Correspondence& c = set[idx[2]];
    if (IsDegenerateSample(a, b, c, params.min_triangle_area)) {
      ++local_stats.degenerate_samples;
      continue;
    }
    for (const RigidPose& minimal : SolveP3P(a, b, c, camera)) {
      ++local_stats.minimal_solutions;
      RigidPose pose = minimal;
      std::vector<double> errors = ReprojectionErrors(set, pose, camera);
      // Non-minimal refit from the hypothesis' own inliers.
      const std::vector<int> inliers = InlierIndices(errors, tau);
      if (inliers.size() > 3) {
        if (auto refit = RefitPose(pose, corrs, camera, inliers)) {
          std::vector<double> refit_errors =
              ReprojectionErrors(set, *refit, camera);
          if (quality(refit_errors) >= quality(errors)) {
            pose = *refit;
            errors = std::move(refit_errors);
          }
        }
      }
      const double q = quality(errors);
      if (best && q <= best->quality) continue;

      ++local_stats.local_optimizations;
      const LocalOptimizationResult lo = GraphCutLocalOptimize(
          pose, set, *graph, camera, lo_options, explained_errors);
      PoseHypothesis hypothesis;
      hypothesis.pose = lo.pose;
      hypothesis.quality = lo.quality;
      if (!best || hypothesis.quality > best->quality) best = std::move(hypothesis);
    }
    if (best && best->quality >= params.quality_threshold) break;
  }
  if (stats) *stats = local_stats;
  if (!best) {
    throw Error(ErrorCode::kNoHypothesis,
                "no non-degenerate sample produced a pose");
  }
  best->inliers =
      InlierIndices(ReprojectionErrors(set, best->pose, camera), tau);
  return *best;
}

}  // namespace pose_forge
