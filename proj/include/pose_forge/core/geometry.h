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

#ifndef POSE_FORGE_CORE_GEOMETRY_H_
#define POSE_FORGE_CORE_GEOMETRY_H_

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace pose_forge {

// Model-to-camera rigid transform. Lengths are millimeters.
struct RigidPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidPose Identity() { return {}; }

  RigidPose Inverse() const;

  Eigen::Vector3d operator*(const Eigen::Vector3d& x) const {
    return rotation * x + translation;
  }

  // (a * b)(x) == a(b(x)).
  RigidPose operator*(const RigidPose& other) const;

  // Orthonormality and det(R) = +1, both within `tolerance` per entry.
  bool IsValid(double tolerance = 1e-9) const;
};

// Builds a pose and throws ValidationError if the rotation is not proper
// orthonormal within `tolerance`.
RigidPose MakeRigidPose(const Eigen::Matrix3d& rotation,
                        const Eigen::Vector3d& translation,
                        double tolerance = 1e-9);

inline Eigen::Vector3d TransformPoint(const Eigen::Vector3d& x,
                                      const RigidPose& pose) {
  return pose * x;
}

Eigen::Matrix3d AxisAngleToRotation(const Eigen::Vector3d& axis_angle);

// Rotation angle in radians of R, in [0, pi]; the arccos argument is clamped.
double RotationAngle(const Eigen::Matrix3d& rotation);

// Nearest rotation matrix in the Frobenius sense (SVD projection).
Eigen::Matrix3d ProjectToRotation(const Eigen::Matrix3d& m);

}  // namespace pose_forge

#endif  // POSE_FORGE_CORE_GEOMETRY_H_
