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

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

using Matrix6x10 = Eigen::Matrix<double, 6, 10>;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Vector4 = Eigen::Vector4d;

struct EPnPProblem {
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector2d> pixels;
  std::array<Eigen::Vector3d, 4> controls;
  std::vector<Eigen::Vector4d> alphas;
};

// Each L row holds the coefficients of beta_a beta_b (a <= b) in the
// squared distance between control points i and j.
Matrix6x10 BuildL(const std::array<Eigen::Matrix<double, 12, 1>, 4>& v) {
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                       {1, 2}, {1, 3}, {2, 3}};
  Matrix6x10 l;
  for (int r = 0; r < 6; ++r) {
    const int a = kPairs[r][0], b = kPairs[r][1];
    std::array<Eigen::Vector3d, 4> dv;
    for (int k = 0; k < 4; ++k) {
      dv[k] = v[k].segment<3>(3 * a) - v[k].segment<3>(3 * b);
    }
    l(r, 0) = dv[0].dot(dv[0]);
    l(r, 1) = 2 * dv[0].dot(dv[1]);
    l(r, 2) = dv[1].dot(dv[1]);
    l(r, 3) = 2 * dv[0].dot(dv[2]);
    l(r, 4) = 2 * dv[1].dot(dv[2]);
    l(r, 5) = dv[2].dot(dv[2]);
    l(r, 6) = 2 * dv[0].dot(dv[3]);
    l(r, 7) = 2 * dv[1].dot(dv[3]);
    l(r, 8) = 2 * dv[2].dot(dv[3]);
    l(r, 9) = dv[3].dot(dv[3]);
  }
  return l;
}

template <int N>
Eigen::Matrix<double, N, 1> SolveColumns(const Matrix6x10& l, const Vector6& rho,
                                         const std::array<int, N>& cols) {
  Eigen::Matrix<double, 6, N> sub;
  for (int i = 0; i < N; ++i) sub.col(i) = l.col(cols[i]);
  return sub.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(rho);
}

Vector4 BetasApprox1(const Matrix6x10& l, const Vector6& rho) {
  const Eigen::Vector4d b4 = SolveColumns<4>(l, rho, {0, 1, 3, 6});
  Vector4 betas;
  if (b4[0] < 0) {
    betas[0] = std::sqrt(-b4[0]);
    betas.tail<3>() = -b4.tail<3>() / betas[0];
  } else {
    betas[0] = std::sqrt(b4[0]);
    betas.tail<3>() = b4.tail<3>() / betas[0];
  }
  return betas;
}

Vector4 BetasApprox2(const Matrix6x10& l, const Vector6& rho) {
  const Eigen::Vector3d b3 = SolveColumns<3>(l, rho, {0, 1, 2});
  Vector4 betas = Vector4::Zero();
  if (b3[0] < 0) {
    betas[0] = std::sqrt(-b3[0]);
    betas[1] = b3[2] < 0 ? std::sqrt(-b3[2]) : 0.0;
  } else {
    betas[0] = std::sqrt(b3[0]);
    betas[1] = b3[2] > 0 ? std::sqrt(b3[2]) : 0.0;
  }
  if (b3[1] < 0) betas[0] = -betas[0];
  return betas;
}

Vector4 BetasApprox3(const Matrix6x10& l, const Vector6& rho) {
  const Eigen::Matrix<double, 5, 1> b5 = SolveColumns<5>(l, rho, {0, 1, 2, 3, 4});
  Vector4 betas = Vector4::Zero();
  if (b5[0] < 0) {
    betas[0] = std::sqrt(-b5[0]);
    betas[1] = b5[2] < 0 ? std::sqrt(-b5[2]) : 0.0;
  } else {
    betas[0] = std::sqrt(b5[0]);
    betas[1] = b5[2] > 0 ? std::sqrt(b5[2]) : 0.0;
  }
  if (b5[1] < 0) betas[0] = -betas[0];
  betas[2] = betas[0] != 0.0 ? b5[3] / betas[0] : 0.0;
  return betas;
}

void GaussNewton(const Matrix6x10& l, const Vector6& rho, Vector4* betas) {
  for (int it = 0; it < 10; ++it) {
    const Vector4& b = *betas;
    Eigen::Matrix<double, 6, 4> a;
    Vector6 residual;
    for (int i = 0; i < 6; ++i) {
      const auto row = l.row(i);
      a(i, 0) = 2 * row[0] * b[0] + row[1] * b[1] + row[3] * b[2] + row[6] * b[3];
      a(i, 1) = row[1] * b[0] + 2 * row[2] * b[1] + row[4] * b[2] + row[7] * b[3];
      a(i, 2) = row[3] * b[0] + row[4] * b[1] + 2 * row[5] * b[2] + row[8] * b[3];
      a(i, 3) = row[6] * b[0] + row[7] * b[1] + row[8] * b[2] + 2 * row[9] * b[3];
      residual[i] =
          rho[i] - (row[0] * b[0] * b[0] + row[1] * b[0] * b[1] +
                    row[2] * b[1] * b[1] + row[3] * b[0] * b[2] +
                    row[4] * b[1] * b[2] + row[5] * b[2] * b[2] +
                    row[6] * b[0] * b[3] + row[7] * b[1] * b[3] +
                    row[8] * b[2] * b[3] + row[9] * b[3] * b[3]);
    }
    const Vector4 step = a.colPivHouseholderQr().solve(residual);
    if (!step.allFinite()) return;
    *betas += step;
    if (step.norm() < 1e-14 * (1.0 + betas->norm())) return;
  }
}

// Camera-frame points from control-point weights, then Kabsch alignment.
RigidPose PoseFromBetas(const EPnPProblem& problem,
                        const std::array<Eigen::Matrix<double, 12, 1>, 4>& v,
                        const Vector4& betas) {
  Eigen::Matrix<double, 12, 1> ccs = Eigen::Matrix<double, 12, 1>::Zero();
  for (int k = 0; k < 4; ++k) ccs += betas[k] * v[k];
  const int n = static_cast<int>(problem.points.size());
  std::vector<Eigen::Vector3d> pcs(n);
  for (int i = 0; i < n; ++i) {
    pcs[i].setZero();
    for (int c = 0; c < 4; ++c) pcs[i] += problem.alphas[i][c] * ccs.segment<3>(3 * c);
  }
  if (pcs[0].z() < 0.0) {
    for (auto& p : pcs) p = -p;
  }

  Eigen::Vector3d pc0 = Eigen::Vector3d::Zero(), pw0 = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    pc0 += pcs[i];
    pw0 += problem.points[i];
  }
  pc0 /= n;
  pw0 /= n;
  Eigen::Matrix3d abt = Eigen::Matrix3d::Zero();
  for (int i = 0; i < n; ++i) {
    abt += (pcs[i] - pc0) * (problem.points[i] - pw0).transpose();
  }
  RigidPose pose;
  pose.rotation = ProjectToRotation(abt);
  pose.translation = pc0 - pose.rotation * pw0;
  return pose;
}

double SquaredReprojection(const EPnPProblem& problem, const RigidPose& pose,
                           const CameraIntrinsics& camera) {
  double sum = 0.0;
  for (std::size_t i = 0; i < problem.points.size(); ++i) {
    const Eigen::Vector3d p = pose * problem.points[i];
    if (!(p.z() > 0.0)) return std::numeric_limits<double>::infinity();
    sum += (camera.ProjectCameraPoint(p) - problem.pixels[i]).squaredNorm();
  }
  return sum;
}

}  // namespace

RigidPose SolveEPnP(std::span<const Correspondence> correspondences,
                    const CameraIntrinsics& camera,
                    std::span<const int> indices) {
  EPnPProblem problem;
  auto add = [&](const Correspondence& c) {
    problem.points.push_back(c.point);
    problem.pixels.push_back(c.pixel);
  };
  if (indices.empty()) {
    for (const auto& c : correspondences) add(c);
  } else {
    for (int i : indices) add(correspondences[i]);
  }
  const int n = static_cast<int>(problem.points.size());
  if (n < 4) {
    std::ostringstream msg;
    msg << "EPnP needs at least 4 correspondences, got " << n;
    throw Error(ErrorCode::kTooFewPoints, msg.str());
  }

  // Control points: centroid plus the principal axes scaled by their spread.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : problem.points) centroid += p;
  centroid /= n;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : problem.points) {
    cov += (p - centroid) * (p - centroid).transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d lambda = eig.eigenvalues();  // ascending
  if (!(lambda[2] > 0.0) || lambda[0] < kNearPlanarRatio * lambda[2]) {
    throw Error(ErrorCode::kNearPlanarConfiguration,
                "model points are (nearly) coplanar");
  }
  problem.controls[0] = centroid;
  for (int k = 0; k < 3; ++k) {
    problem.controls[k + 1] =
        centroid + std::sqrt(lambda[2 - k] / n) * eig.eigenvectors().col(2 - k);
  }

  Eigen::Matrix3d basis;
  for (int k = 0; k < 3; ++k) basis.col(k) = problem.controls[k + 1] - centroid;
  const Eigen::Matrix3d basis_inv = basis.inverse();
  problem.alphas.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d a = basis_inv * (problem.points[i] - centroid);
    problem.alphas[i] << 1.0 - a.sum(), a[0], a[1], a[2];
  }

  Eigen::Matrix<double, 12, 12> mtm = Eigen::Matrix<double, 12, 12>::Zero();
  for (int i = 0; i < n; ++i) {
    Eigen::Matrix<double, 2, 12> rows = Eigen::Matrix<double, 2, 12>::Zero();
    const Eigen::Vector2d& u = problem.pixels[i];
    for (int c = 0; c < 4; ++c) {
      const double a = problem.alphas[i][c];
      rows(0, 3 * c) = a * camera.fx;
      rows(0, 3 * c + 2) = a * (camera.cx - u.x());
      rows(1, 3 * c + 1) = a * camera.fy;
      rows(1, 3 * c + 2) = a * (camera.cy - u.y());
    }
    mtm += rows.transpose() * rows;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 12, 12>> null_space(mtm);
  std::array<Eigen::Matrix<double, 12, 1>, 4> v;
  for (int k = 0; k < 4; ++k) v[k] = null_space.eigenvectors().col(k);

  const Matrix6x10 l = BuildL(v);
  Vector6 rho;
  {
    int r = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        rho[r++] = (problem.controls[a] - problem.controls[b]).squaredNorm();
      }
    }
  }

  RigidPose best;
  double best_cost = std::numeric_limits<double>::infinity();
  bool have_pose = false;
  const std::array<Vector4, 3> initial = {BetasApprox1(l, rho),
                                          BetasApprox2(l, rho),
                                          BetasApprox3(l, rho)};
  for (Vector4 betas : initial) {
    if (!betas.allFinite()) continue;
    GaussNewton(l, rho, &betas);
    const RigidPose pose = PoseFromBetas(problem, v, betas);
    const double cost = SquaredReprojection(problem, pose, camera);
    if (!have_pose || cost < best_cost) {
      best_cost = cost;
      best = pose;
      have_pose = true;
    }
  }
  return best;
}

}  // namespace pose_forge
