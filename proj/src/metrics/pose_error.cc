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

#include "pose_forge/metrics/pose_error.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireVertices(std::span<const Eigen::Vector3d> vertices) {
  if (vertices.empty()) {
    throw Error(ErrorCode::kEmptyModel, "model has no vertices");
  }
}

void RequireSymmetries(std::span<const RigidPose> symmetries) {
  if (symmetries.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "symmetry set is empty");
  }
}

// Per-vertex terms are evaluated in parallel and summed serially so the
// result does not depend on the thread count.
template <typename Term>
double MeanOf(int n, Term term) {
  std::vector<double> values(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) values[i] = term(i);
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / n;
}

template <typename Term>
double MaxOf(int n, Term term) {
  double result = 0.0;
#pragma omp parallel for schedule(static) reduction(max : result)
  for (int i = 0; i < n; ++i) result = std::max(result, term(i));
  return result;
}

}  // namespace

double TranslationError(const Eigen::Vector3d& t_est,
                        const Eigen::Vector3d& t_gt) {
  return (t_gt - t_est).norm();
}

double RotationError(const Eigen::Matrix3d& r_est, const Eigen::Matrix3d& r_gt) {
  return RotationAngle(r_est * r_gt.transpose());
}

double AddError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices) {
  RequireVertices(vertices);
  return MeanOf(static_cast<int>(vertices.size()), [&](int i) {
    return (gt * vertices[i] - est * vertices[i]).norm();
  });
}

double AdiError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices, const KdTree& tree) {
  RequireVertices(vertices);
  // ||gt(x1) - est(x2)|| = ||est^-1(gt(x1)) - x2|| for rigid est.
  const RigidPose relative = est.Inverse() * gt;
  return MeanOf(static_cast<int>(vertices.size()), [&](int i) {
    return tree.NearestDistance(relative * vertices[i]);
  });
}

double AdiError(const RigidPose& est, const RigidPose& gt,
                std::span<const Eigen::Vector3d> vertices) {
  RequireVertices(vertices);
  const KdTree tree(std::vector<Eigen::Vector3d>(vertices.begin(), vertices.end()));
  return AdiError(est, gt, vertices, tree);
}

double MssdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices) {
  RequireVertices(vertices);
  RequireSymmetries(symmetries);
  double best = kInf;
  for (const RigidPose& s : symmetries) {
    const RigidPose gt_sym = gt * s;
    best = std::min(best, MaxOf(static_cast<int>(vertices.size()), [&](int i) {
                      return (est * vertices[i] - gt_sym * vertices[i]).norm();
                    }));
  }
  return best;
}

double MspdError(const RigidPose& est, const RigidPose& gt,
                 std::span<const RigidPose> symmetries,
                 std::span<const Eigen::Vector3d> vertices,
                 const CameraIntrinsics& camera) {
  RequireVertices(vertices);
  RequireSymmetries(symmetries);
  double best = kInf;
  for (const RigidPose& s : symmetries) {
    const RigidPose gt_sym = gt * s;
    best = std::min(best, MaxOf(static_cast<int>(vertices.size()), [&](int i) {
                      const Eigen::Vector3d a = est * vertices[i];
                      const Eigen::Vector3d b = gt_sym * vertices[i];
                      if (!(a.z() > 0.0) || !(b.z() > 0.0)) return kInf;
                      return (camera.ProjectCameraPoint(a) -
                              camera.ProjectCameraPoint(b))
                          .norm();
                    }));
  }
  return best;
}

}  // namespace pose_forge
