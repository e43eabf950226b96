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

#include "pose_forge/fitting/pnp.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

template <typename Fn>
void ForEachSelected(std::span<const Correspondence> correspondences,
                     std::span<const int> indices, Fn fn) {
  if (indices.empty()) {
    for (const auto& c : correspondences) fn(c);
  } else {
    for (int i : indices) fn(correspondences[i]);
  }
}

// Left-multiplied update: R <- exp(w) R, t <- exp(w) t + v.
RigidPose Update(const RigidPose& pose, const Eigen::Matrix<double, 6, 1>& d) {
  const Eigen::Matrix3d dr = AxisAngleToRotation(d.head<3>());
  RigidPose out;
  out.rotation = ProjectToRotation(dr * pose.rotation);
  out.translation = dr * pose.translation + d.tail<3>();
  return out;
}

}  // namespace

double ReprojectionCost(const RigidPose& pose,
                        std::span<const Correspondence> correspondences,
                        const CameraIntrinsics& camera,
                        std::span<const int> indices) {
  double cost = 0.0;
  ForEachSelected(correspondences, indices, [&](const Correspondence& c) {
    const Eigen::Vector3d p = pose * c.point;
    if (!(p.z() > 0.0)) {
      cost = std::numeric_limits<double>::infinity();
      return;
    }
    cost += (camera.ProjectCameraPoint(p) - c.pixel).squaredNorm();
  });
  return cost;
}

RigidPose RefinePose(const RigidPose& initial,
                     std::span<const Correspondence> correspondences,
                     const CameraIntrinsics& camera,
                     std::span<const int> indices,
                     const RefineOptions& options) {
  const std::size_t n =
      indices.empty() ? correspondences.size() : indices.size();
  if (n < 3) {
    std::ostringstream msg;
    msg << "pose refinement needs at least 3 correspondences, got " << n;
    throw Error(ErrorCode::kTooFewPoints, msg.str());
  }

  RigidPose pose = initial;
  double cost = ReprojectionCost(pose, correspondences, camera, indices);
  double lambda = 1e-3;
  for (int it = 0; it < options.max_iterations && cost > 0.0; ++it) {
    // Normal equations over the points currently in front of the camera.
    Eigen::Matrix<double, 6, 6> jtj = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> jtr = Eigen::Matrix<double, 6, 1>::Zero();
    ForEachSelected(correspondences, indices, [&](const Correspondence& c) {
      const Eigen::Vector3d p = pose * c.point;
      if (!(p.z() > 0.0)) return;
      const double iz = 1.0 / p.z();
      Eigen::Matrix<double, 2, 3> dproj;
      dproj << camera.fx * iz, 0.0, -camera.fx * p.x() * iz * iz, 0.0,
          camera.fy * iz, -camera.fy * p.y() * iz * iz;
      Eigen::Matrix3d skew;
      skew << 0, -p.z(), p.y(), p.z(), 0, -p.x(), -p.y(), p.x(), 0;
      Eigen::Matrix<double, 2, 6> jac;
      jac.leftCols<3>() = -dproj * skew;
      jac.rightCols<3>() = dproj;
      const Eigen::Vector2d r = camera.ProjectCameraPoint(p) - c.pixel;
      jtj += jac.transpose() * jac;
      jtr += jac.transpose() * r;
    });

    bool accepted = false;
    while (lambda < 1e12) {
      Eigen::Matrix<double, 6, 6> a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::Matrix<double, 6, 1> delta = -a.ldlt().solve(jtr);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const RigidPose candidate = Update(pose, delta);
      const double candidate_cost =
          ReprojectionCost(candidate, correspondences, camera, indices);
      if (candidate_cost < cost) {
        const double change = (cost - candidate_cost) / cost;
        pose = candidate;
        cost = candidate_cost;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        if (std::isfinite(change) && change < options.relative_cost_tolerance) {
          return pose;
        }
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
  }
  return pose;
}

std::optional<RigidPose> RefitPose(
    const RigidPose& current, std::span<const Correspondence> correspondences,
    const CameraIntrinsics& camera, std::span<const int> indices) {
  if (indices.size() < 3) return std::nullopt;
  RigidPose start = current;
  if (indices.size() >= 4) {
    try {
      const RigidPose epnp = SolveEPnP(correspondences, camera, indices);
      if (ReprojectionCost(epnp, correspondences, camera, indices) <
          ReprojectionCost(current, correspondences, camera, indices)) {
        start = epnp;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNearPlanarConfiguration) throw;
    }
  }
  return RefinePose(start, correspondences, camera, indices);
}

}  // namespace pose_forge
