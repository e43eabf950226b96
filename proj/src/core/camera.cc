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

#include "pose_forge/core/camera.h"

#include <cmath>
#include <sstream>

#include "pose_forge/core/error.h"

namespace pose_forge {

void CameraIntrinsics::Validate() const {
  std::ostringstream msg;
  if (!(fx > 0.0) || !(fy > 0.0)) {
    msg << "focal lengths must be positive (fx=" << fx << ", fy=" << fy << ")";
  } else if (width <= 0 || height <= 0) {
    msg << "image size must be positive (" << width << "x" << height << ")";
  } else if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    msg << "principal point (" << cx << ", " << cy
        << ") outside the image " << width << "x" << height;
  } else {
    return;
  }
  throw Error(ErrorCode::kValidationError, msg.str());
}

Eigen::Matrix3d CameraIntrinsics::Matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

CameraIntrinsics CameraIntrinsics::Subsampled(int stride) const {
  if (stride < 1) {
    throw Error(ErrorCode::kInvalidArgument, "stride must be >= 1");
  }
  // Grid cell g covers pixels [s*g, s*g + s - 1]; its center is
  // s*g + (s - 1)/2, hence g = (p - (s - 1)/2) / s.
  const double s = stride;
  const double offset = (s - 1.0) / 2.0;
  CameraIntrinsics grid;
  grid.fx = fx / s;
  grid.fy = fy / s;
  grid.cx = (cx - offset) / s;
  grid.cy = (cy - offset) / s;
  grid.width = (width + stride - 1) / stride;
  grid.height = (height + stride - 1) / stride;
  return grid;
}

Eigen::Vector2d Project(const Eigen::Vector3d& x, const RigidPose& pose,
                        const CameraIntrinsics& camera) {
  const Eigen::Vector3d p = pose * x;
  if (!(p.z() > 0.0)) {
    std::ostringstream msg;
    msg << "point is not in front of the camera (Z=" << p.z() << ")";
    throw Error(ErrorCode::kNonPositiveDepth, msg.str());
  }
  return camera.ProjectCameraPoint(p);
}

std::optional<Eigen::Vector2d> TryProject(const Eigen::Vector3d& x,
                                          const RigidPose& pose,
                                          const CameraIntrinsics& camera) {
  const Eigen::Vector3d p = pose * x;
  if (!(p.z() > 0.0)) return std::nullopt;
  return camera.ProjectCameraPoint(p);
}

DistanceMap DepthToDistance(const DepthMap& depth,
                            const CameraIntrinsics& camera) {
  if (depth.width() != camera.width || depth.height() != camera.height) {
    std::ostringstream msg;
    msg << "depth map is " << depth.width() << "x" << depth.height()
        << " but the camera is " << camera.width << "x" << camera.height;
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  DistanceMap distance(depth.width(), depth.height(), 0.0);
#pragma omp parallel for schedule(static)
  for (int v = 0; v < depth.height(); ++v) {
    const double ry = (v - camera.cy) / camera.fy;
    for (int u = 0; u < depth.width(); ++u) {
      const double z = depth(u, v);
      if (z == 0.0) continue;
      const double rx = (u - camera.cx) / camera.fx;
      distance(u, v) = z * std::sqrt(rx * rx + ry * ry + 1.0);
    }
  }
  return distance;
}

}  // namespace pose_forge
