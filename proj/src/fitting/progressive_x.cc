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

#include "pose_forge/fitting/progressive_x.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>

#include "pose_forge/core/error.h"
#include "pose_forge/fitting/pearl.h"
#include "pose_forge/fitting/quality.h"

namespace pose_forge {
namespace {

std::uint64_t ProposalSeed(std::uint64_t seed, int round) {
  if (round == 0) return seed;
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(round);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

PoseHypothesis Describe(const RigidPose& pose, const CorrespondenceSet& set,
                        const CameraIntrinsics& camera, double tau) {
  const std::vector<double> errors = ReprojectionErrors(set, pose, camera);
  PoseHypothesis h;
  h.pose = pose;
  h.quality = QualitySingle(set, errors, tau);
  h.inliers = InlierIndices(errors, tau);
  return h;
}

}  // namespace

double JaccardIndex(std::span<const int> a, std::span<const int> b) {
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  const std::size_t union_size = a.size() + b.size() - common.size();
  if (union_size == 0) return 0.0;
  return double(common.size()) / double(union_size);
}

std::vector<int> UnionOfInliers(std::span<const PoseHypothesis> hypotheses) {
  std::vector<int> all;
  for (const auto& h : hypotheses) {
    all.insert(all.end(), h.inliers.begin(), h.inliers.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

void MultiFittingParams::Validate() const {
  fitting.Validate();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(jaccard_threshold >= 0.0 && jaccard_threshold <= 1.0,
          "Jaccard threshold must lie in [0, 1]");
  require(instance_probability >= 0.0 && instance_probability <= 1.0,
          "instance probability threshold must lie in [0, 1]");
  require(max_instances >= 0, "instance limit must be >= 0");
  require(label_cost_fraction >= 0.0, "label cost must be >= 0");
  require(max_proposals > 0, "proposal limit must be > 0");
}

double AnotherInstanceProbability(int unexplained, int total, int iterations) {
  if (total <= 0) return 0.0;
  const double w = double(unexplained) / double(total);
  return 1.0 - std::pow(1.0 - w * w * w, iterations);
}

std::vector<PoseHypothesis> ProgressiveX(const CorrespondenceSet& set,
                                         const CameraIntrinsics& camera,
                                         const MultiFittingParams& params,
                                         ProgressiveXStats* stats) {
  params.Validate();
  if (set.size() < 3) {
    std::ostringstream msg;
    msg << "pose fitting needs at least 3 correspondences, got " << set.size();
    throw Error(ErrorCode::kTooFewPoints, msg.str());
  }
  const double tau = params.fitting.inlier_threshold;
  const NeighborhoodGraph graph =
      BuildNeighborhoodGraph(set, params.fitting.neighborhood_radius);
  PearlOptions pearl;
  pearl.inlier_threshold = tau;
  pearl.spatial_weight = params.fitting.spatial_weight;
  pearl.label_cost_fraction = params.label_cost_fraction;

  ProgressiveXStats local;
  std::vector<PoseHypothesis> hypotheses;
  for (int round = 0; round < params.max_proposals; ++round) {
    if (params.max_instances > 0 &&
        static_cast<int>(hypotheses.size()) >= params.max_instances) {
      break;
    }
    std::vector<RigidPose> poses;
    for (const auto& h : hypotheses) poses.push_back(h.pose);
    const std::vector<double> explained =
        hypotheses.empty() ? std::vector<double>{}
                           : ExplainedErrors(set, poses, camera);

    FittingParams fitting = params.fitting;
    fitting.seed = ProposalSeed(params.fitting.seed, round);
    PoseHypothesis proposal;
    try {
      proposal = GcRansac(set, camera, fitting, &graph, explained);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoHypothesis) break;
      throw;
    }
    ++local.proposals;

    const std::vector<int> covered = UnionOfInliers(hypotheses);
    if (!hypotheses.empty()) {
      std::vector<int> fresh;
      std::set_difference(proposal.inliers.begin(), proposal.inliers.end(),
                          covered.begin(), covered.end(),
                          std::back_inserter(fresh));
      const double p = AnotherInstanceProbability(
          static_cast<int>(fresh.size()), set.size(),
          params.fitting.max_iterations);
      if (p < params.instance_probability) break;
      if (JaccardIndex(proposal.inliers, covered) >= params.jaccard_threshold) {
        ++local.rejected_similar;
        continue;
      }
    }
    hypotheses.push_back(std::move(proposal));
    if (hypotheses.size() < 2) continue;

    ++local.consolidations;
    poses.clear();
    for (const auto& h : hypotheses) poses.push_back(h.pose);
    const PearlResult consolidated =
        PearlConsolidate(poses, set, graph, camera, pearl);
    hypotheses.clear();
    for (const RigidPose& pose : consolidated.poses) {
      hypotheses.push_back(Describe(pose, set, camera, tau));
    }
  }
  if (stats) *stats = local;
  return hypotheses;
}

}  // namespace pose_forge
