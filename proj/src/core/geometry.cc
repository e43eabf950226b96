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

#include "pose_forge/core/geometry.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "pose_forge/core/error.h"

namespace pose_forge {

RigidPose RigidPose::Inverse() const {
  RigidPose inverse;
  inverse.rotation = rotation.transpose();
  inverse.translation = -(inverse.rotation * translation);
  return inverse;
}

RigidPose RigidPose::operator*(const RigidPose& other) const {
  RigidPose out;
  out.rotation = rotation * other.rotation;
  out.translation = rotation * other.translation + translation;
  return out;
}

bool RigidPose::IsValid(double tolerance) const {
  if (!rotation.allFinite() || !translation.allFinite()) return false;
  const Eigen::Matrix3d gram = rotation.transpose() * rotation;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tolerance) {
    return false;
  }
  return std::abs(rotation.determinant() - 1.0) <= tolerance;
}

RigidPose MakeRigidPose(const Eigen::Matrix3d& rotation,
                        const Eigen::Vector3d& translation, double tolerance) {
  RigidPose pose{rotation, translation};
  if (!pose.IsValid(tolerance)) {
    std::ostringstream msg;
    msg << "rotation is not a proper orthonormal matrix (tolerance "
        << tolerance << ")";
    throw Error(ErrorCode::kValidationError, msg.str());
  }
  return pose;
}

Eigen::Matrix3d AxisAngleToRotation(const Eigen::Vector3d& axis_angle) {
  const double angle = axis_angle.norm();
  if (angle == 0.0) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, axis_angle / angle).toRotationMatrix();
}

double RotationAngle(const Eigen::Matrix3d& rotation) {
  // atan2 of the skew and symmetric parts stays accurate near 0 and pi,
  // where acos of the trace loses half the digits.
  const double c = (rotation.trace() - 1.0) / 2.0;
  const Eigen::Vector3d skew(rotation(2, 1) - rotation(1, 2),
                             rotation(0, 2) - rotation(2, 0),
                             rotation(1, 0) - rotation(0, 1));
  return std::atan2(0.5 * skew.norm(), c);
}

Eigen::Matrix3d ProjectToRotation(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) {
    d(2, 2) = -1.0;
  }
  return svd.matrixU() * d * svd.matrixV().transpose();
}

}  // namespace pose_forge
