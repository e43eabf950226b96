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

#include "pose_forge/metrics/vsd.h"

#include <cmath>

#include "pose_forge/core/error.h"
#include "pose_forge/rasterizer/rasterizer.h"
#include "pose_forge/rasterizer/visibility.h"

namespace pose_forge {

std::vector<double> VsdErrors(const DistanceMap& estimate,
                              const DistanceMap& ground_truth,
                              const DistanceMap& scene,
                              std::span<const double> taus, double delta) {
  const VisibilityMasks masks =
      ComputeVisibilityMasks(estimate, ground_truth, scene, delta);
  std::vector<double> out(taus.size(), 1.0);
  std::vector<std::size_t> bad(taus.size(), 0);
  std::size_t union_count = 0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const bool in_est = masks.estimate[i] != 0;
    const bool in_gt = masks.ground_truth[i] != 0;
    if (!in_est && !in_gt) continue;
    ++union_count;
    const bool both = in_est && in_gt;
    const double diff = std::abs(estimate[i] - ground_truth[i]);
    for (std::size_t k = 0; k < taus.size(); ++k) {
      if (!both || diff >= taus[k]) ++bad[k];
    }
  }
  if (union_count == 0) return out;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    out[k] = double(bad[k]) / double(union_count);
  }
  return out;
}

double VsdError(const DistanceMap& estimate, const DistanceMap& ground_truth,
                const DistanceMap& scene, double tau, double delta) {
  const double taus[] = {tau};
  return VsdErrors(estimate, ground_truth, scene, taus, delta)[0];
}

double VsdError(const TriangleMesh& mesh, const RigidPose& est,
                const RigidPose& gt, const CameraIntrinsics& camera,
                const DistanceMap& scene, double tau, double delta) {
  if (scene.width() != camera.width || scene.height() != camera.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "scene distance map does not match the camera size");
  }
  return VsdError(RenderDistanceMap(mesh, est, camera),
                  RenderDistanceMap(mesh, gt, camera), scene, tau, delta);
}

}  // namespace pose_forge
