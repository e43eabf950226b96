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

#include "pose_forge/fitting/quality.h"

#include <algorithm>
#include <limits>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckTau(double tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "inlier threshold must be > 0");
  }
}

template <typename Score>
double MeanBestPerPixel(const CorrespondenceSet& set, Score score) {
  if (set.num_pixels() <= 0) return 0.0;
  double sum = 0.0;
  for (int g = 0; g < set.num_pixels(); ++g) {
    double best = 0.0;
    for (int i : set.PixelGroup(g)) best = std::max(best, score(i));
    sum += best;
  }
  return sum / set.num_pixels();
}

}  // namespace

double ReprojectionError(const Correspondence& c, const RigidPose& pose,
                         const CameraIntrinsics& camera) {
  const Eigen::Vector3d p = pose * c.point;
  if (!(p.z() > 0.0)) return kInf;
  return (c.pixel - camera.ProjectCameraPoint(p)).norm();
}

std::vector<double> ReprojectionErrors(const CorrespondenceSet& set,
                                       const RigidPose& pose,
                                       const CameraIntrinsics& camera) {
  std::vector<double> errors(set.size());
  for (int i = 0; i < set.size(); ++i) {
    errors[i] = ReprojectionError(set[i], pose, camera);
  }
  return errors;
}

std::vector<double> ExplainedErrors(const CorrespondenceSet& set,
                                    std::span<const RigidPose> hypotheses,
                                    const CameraIntrinsics& camera) {
  std::vector<double> explained(set.size(), kInf);
  for (const auto& pose : hypotheses) {
    for (int i = 0; i < set.size(); ++i) {
      explained[i] =
          std::min(explained[i], ReprojectionError(set[i], pose, camera));
    }
  }
  return explained;
}

double QualitySingle(const CorrespondenceSet& set,
                     std::span<const double> errors, double tau) {
  CheckTau(tau);
  return MeanBestPerPixel(
      set, [&](int i) { return TruncatedQuadratic(errors[i], tau); });
}

double QualityMulti(const CorrespondenceSet& set, std::span<const double> errors,
                    std::span<const double> explained_errors, double tau) {
  CheckTau(tau);
  const double tau_sq = tau * tau;
  return MeanBestPerPixel(set, [&](int i) {
    const double e = errors[i];
    const double e_prime = explained_errors[i];
    const double novelty =
        e_prime == kInf ? kInf : (e_prime * e_prime) / tau_sq;
    return std::max(0.0, std::min(1.0 - (e * e) / tau_sq, novelty));
  });
}

double QualitySingle(const CorrespondenceSet& set, const RigidPose& pose,
                     const CameraIntrinsics& camera, double tau) {
  return QualitySingle(set, ReprojectionErrors(set, pose, camera), tau);
}

double QualityMulti(const CorrespondenceSet& set, const RigidPose& pose,
                    std::span<const RigidPose> hypotheses,
                    const CameraIntrinsics& camera, double tau) {
  return QualityMulti(set, ReprojectionErrors(set, pose, camera),
                      ExplainedErrors(set, hypotheses, camera), tau);
}

std::vector<int> InlierIndices(std::span<const double> errors, double tau) {
  std::vector<int> inliers;
  for (int i = 0; i < static_cast<int>(errors.size()); ++i) {
    if (errors[i] < tau) inliers.push_back(i);
  }
  return inliers;
}

}  // namespace pose_forge
