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

#ifndef POSE_FORGE_CORE_CAMERA_H_
#define POSE_FORGE_CORE_CAMERA_H_

#include <optional>

#include <Eigen/Core>

#include "pose_forge/core/geometry.h"
#include "pose_forge/core/image.h"

namespace pose_forge {

// Pinhole intrinsics. Pixel centers sit at integer coordinates, so the pixel
// in column u and row v covers [u - 0.5, u + 0.5) x [v - 0.5, v + 0.5).
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  // Throws ValidationError unless fx, fy > 0 and the principal point lies
  // inside the image.
  void Validate() const;

  Eigen::Matrix3d Matrix() const;

  // Projection of a camera-frame point. No depth check.
  Eigen::Vector2d ProjectCameraPoint(const Eigen::Vector3d& p) const {
    return {fx * p.x() / p.z() + cx, fy * p.y() / p.z() + cy};
  }

  // Camera-frame point at depth `z` seen through pixel `u`.
  Eigen::Vector3d BackProject(const Eigen::Vector2d& u, double z) const {
    return {(u.x() - cx) / fx * z, (u.y() - cy) / fy * z, z};
  }

  // Unit bearing vector through pixel `u`.
  Eigen::Vector3d Bearing(const Eigen::Vector2d& u) const {
    return Eigen::Vector3d((u.x() - cx) / fx, (u.y() - cy) / fy, 1.0)
        .normalized();
  }

  // Intrinsics of a grid that samples this camera every `stride` pixels at
  // the centers of stride x stride regions.
  CameraIntrinsics Subsampled(int stride) const;
};

// Pixel coordinates of pose * x. Throws NonPositiveDepth when the transformed
// point is not in front of the camera.
Eigen::Vector2d Project(const Eigen::Vector3d& x, const RigidPose& pose,
                        const CameraIntrinsics& camera);

// Same as Project but reports behind-camera points with nullopt.
std::optional<Eigen::Vector2d> TryProject(const Eigen::Vector3d& x,
                                          const RigidPose& pose,
                                          const CameraIntrinsics& camera);

// Converts a Z-depth map into a camera-center distance map. Zeros stay zero.
// Throws DimensionMismatch if the map size differs from the camera's.
DistanceMap DepthToDistance(const DepthMap& depth,
                            const CameraIntrinsics& camera);

}  // namespace pose_forge

#endif  // POSE_FORGE_CORE_CAMERA_H_
