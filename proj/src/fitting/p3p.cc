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
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "pose_forge/core/error.h"
#include "pose_forge/fitting/sample_checks.h"

namespace pose_forge {
namespace {

// Real roots of a[4] x^4 + ... + a[0] from the companion matrix, polished
// with a few Newton steps.
std::vector<double> RealQuarticRoots(const std::array<double, 5>& a) {
  std::vector<double> roots;
  const double lead = a[4];
  const double scale =
      std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2]),
                std::abs(a[3]), std::abs(a[4])});
  if (scale == 0.0 || std::abs(lead) < 1e-14 * scale) return roots;

  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) companion(0, i) = -a[3 - i] / lead;
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  if (solver.info() != Eigen::Success) return roots;

  auto poly = [&](double x) {
    return (((a[4] * x + a[3]) * x + a[2]) * x + a[1]) * x + a[0];
  };
  auto deriv = [&](double x) {
    return ((4 * a[4] * x + 3 * a[3]) * x + 2 * a[2]) * x + a[1];
  };
  for (int i = 0; i < 4; ++i) {
    const std::complex<double> z = solver.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
    double x = z.real();
    for (int it = 0; it < 5; ++it) {
      const double d = deriv(x);
      if (d == 0.0) break;
      const double step = poly(x) / d;
      x -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    roots.push_back(x);
  }
  return roots;
}

// Residuals of the three projections; false if any point is behind.
bool SampleResiduals(const RigidPose& pose,
                     const std::array<const Correspondence*, 3>& sample,
                     const CameraIntrinsics& camera,
                     Eigen::Matrix<double, 6, 1>* r) {
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d p = pose * sample[k]->point;
    if (!(p.z() > 0.0)) return false;
    r->segment<2>(2 * k) = camera.ProjectCameraPoint(p) - sample[k]->pixel;
  }
  return true;
}

// Newton iterations on the square 6x6 system; the closed form loses a few
// digits when the quartic has close roots.
RigidPose Polish(RigidPose pose,
                 const std::array<const Correspondence*, 3>& sample,
                 const CameraIntrinsics& camera) {
  Eigen::Matrix<double, 6, 1> r;
  if (!SampleResiduals(pose, sample, camera, &r)) return pose;
  for (int it = 0; it < 4 && r.norm() > 1e-12; ++it) {
    Eigen::Matrix<double, 6, 6> jac;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d p = pose * sample[k]->point;
      const double iz = 1.0 / p.z();
      Eigen::Matrix<double, 2, 3> dproj;
      dproj << camera.fx * iz, 0.0, -camera.fx * p.x() * iz * iz, 0.0,
          camera.fy * iz, -camera.fy * p.y() * iz * iz;
      Eigen::Matrix3d skew;
      skew << 0, -p.z(), p.y(), p.z(), 0, -p.x(), -p.y(), p.x(), 0;
      jac.block<2, 3>(2 * k, 0) = -dproj * skew;
      jac.block<2, 3>(2 * k, 3) = dproj;
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(jac);
    if (!lu.isInvertible()) break;
    const Eigen::Matrix<double, 6, 1> delta = -lu.solve(r);
    RigidPose next;
    const Eigen::Matrix3d dr = AxisAngleToRotation(delta.head<3>());
    next.rotation = dr * pose.rotation;
    next.translation = dr * pose.translation + delta.tail<3>();
    Eigen::Matrix<double, 6, 1> next_r;
    if (!SampleResiduals(next, sample, camera, &next_r) ||
        next_r.norm() >= r.norm()) {
      break;
    }
    pose = next;
    r = next_r;
  }
  return pose;
}

}  // namespace

std::vector<RigidPose> SolveP3P(const Correspondence& c1,
                                const Correspondence& c2,
                                const Correspondence& c3,
                                const CameraIntrinsics& camera) {
  if (AreCollinear(c1.point, c2.point, c3.point)) {
    throw Error(ErrorCode::kDegenerateSample, "collinear model points");
  }
  const std::array<const Correspondence*, 3> sample = {&c1, &c2, &c3};
  std::vector<RigidPose> solutions;

  Eigen::Vector3d f1 = camera.Bearing(c1.pixel);
  Eigen::Vector3d f2 = camera.Bearing(c2.pixel);
  const Eigen::Vector3d f3 = camera.Bearing(c3.pixel);
  Eigen::Vector3d p1 = c1.point;
  Eigen::Vector3d p2 = c2.point;
  const Eigen::Vector3d p3 = c3.point;
  if (f1.cross(f2).norm() < 1e-12) return solutions;

  // Intermediate camera frame; swap so that f3 ends up at negative z.
  auto camera_frame = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    Eigen::Matrix3d m;
    m.row(0) = a.transpose();
    m.row(2) = a.cross(b).normalized().transpose();
    m.row(1) = m.row(2).cross(m.row(0));
    return m;
  };
  Eigen::Matrix3d cam_frame = camera_frame(f1, f2);
  Eigen::Vector3d f3_local = cam_frame * f3;
  if (f3_local.z() > 0.0) {
    std::swap(f1, f2);
    std::swap(p1, p2);
    cam_frame = camera_frame(f1, f2);
    f3_local = cam_frame * f3;
  }
  if (std::abs(f3_local.z()) < 1e-15) return solutions;

  // Intermediate world frame.
  Eigen::Matrix3d world_frame;
  world_frame.row(0) = (p2 - p1).normalized().transpose();
  world_frame.row(2) =
      world_frame.row(0).transpose().cross(p3 - p1).normalized().transpose();
  world_frame.row(1) = world_frame.row(2).cross(world_frame.row(0));
  const Eigen::Vector3d p3_local = world_frame * (p3 - p1);

  const double d12 = (p2 - p1).norm();
  const double cos_beta = f1.dot(f2);
  double b = std::sqrt(1.0 / (1.0 - cos_beta * cos_beta) - 1.0);
  if (cos_beta < 0.0) b = -b;

  const double phi1 = f3_local.x() / f3_local.z();
  const double phi2 = f3_local.y() / f3_local.z();
  const double q1 = p3_local.x();
  const double q2 = p3_local.y();
  if (std::abs(q2) < 1e-12 * d12 || std::abs(phi2) < 1e-15) return solutions;

  const double phi1_2 = phi1 * phi1, phi2_2 = phi2 * phi2;
  const double q1_2 = q1 * q1, q1_3 = q1_2 * q1, q1_4 = q1_2 * q1_2;
  const double q2_2 = q2 * q2, q2_3 = q2_2 * q2, q2_4 = q2_2 * q2_2;
  const double d12_2 = d12 * d12, b_2 = b * b;

  std::array<double, 5> coeff;
  coeff[0] = -2 * phi1 * phi2 * q1 * q2_2 * d12 * b + phi2_2 * q2_2 * d12_2 +
             2 * q1_3 * d12 - q1_2 * d12_2 + phi2_2 * q1_2 * q2_2 - q1_4 -
             2 * phi2_2 * q1 * q2_2 * d12 + phi1_2 * q1_2 * q2_2 +
             phi2_2 * q2_2 * d12_2 * b_2;
  coeff[1] = 2 * q1_2 * q2 * d12 * b + 2 * phi1 * phi2 * q2_3 * d12 -
             2 * phi2_2 * q2_3 * d12 * b - 2 * q1 * q2 * d12_2 * b;
  coeff[2] = -phi2_2 * q1_2 * q2_2 - phi2_2 * q2_2 * d12_2 * b_2 -
             phi2_2 * q2_2 * d12_2 + phi2_2 * q2_4 + phi1_2 * q2_4 +
             2 * q1 * q2_2 * d12 + 2 * phi1 * phi2 * q1 * q2_2 * d12 * b -
             phi1_2 * q1_2 * q2_2 + 2 * phi2_2 * q1 * q2_2 * d12 -
             q2_2 * d12_2 * b_2 - 2 * q1_2 * q2_2;
  coeff[3] = 2 * q2_3 * d12 * b + 2 * phi2_2 * q2_3 * d12 * b -
             2 * phi1 * phi2 * q2_3 * d12;
  coeff[4] = -phi2_2 * q2_4 - phi1_2 * q2_4 - q2_4;

  for (double cos_theta : RealQuarticRoots(coeff)) {
    if (std::abs(cos_theta) > 1.0 + 1e-9) continue;
    cos_theta = std::clamp(cos_theta, -1.0, 1.0);
    const double denom = -phi1 * cos_theta * q2 / phi2 + q1 - d12;
    if (denom == 0.0) continue;
    const double cot_alpha =
        (-phi1 * q1 / phi2 - cos_theta * q2 + d12 * b) / denom;
    const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
    const double sin_alpha = std::sqrt(1.0 / (cot_alpha * cot_alpha + 1.0));
    double cos_alpha = std::sqrt(1.0 - sin_alpha * sin_alpha);
    if (cot_alpha < 0.0) cos_alpha = -cos_alpha;

    const double k = d12 * sin_alpha * (sin_alpha * b + cos_alpha);
    const Eigen::Vector3d center_local(
        d12 * cos_alpha * (sin_alpha * b + cos_alpha), cos_theta * k,
        sin_theta * k);
    const Eigen::Vector3d center = p1 + world_frame.transpose() * center_local;

    Eigen::Matrix3d rot_local;
    rot_local << -cos_alpha, -sin_alpha * cos_theta, -sin_alpha * sin_theta,
        sin_alpha, -cos_alpha * cos_theta, -cos_alpha * sin_theta, 0.0,
        -sin_theta, cos_theta;
    // Camera orientation in the model frame; the pose maps model to camera.
    const Eigen::Matrix3d orientation =
        world_frame.transpose() * rot_local.transpose() * cam_frame;
    RigidPose pose;
    pose.rotation = ProjectToRotation(orientation.transpose());
    pose.translation = -pose.rotation * center;
    pose = Polish(pose, sample, camera);

    if (pose.rotation.determinant() <= 0.0) continue;
    Eigen::Matrix<double, 6, 1> r;
    if (!SampleResiduals(pose, sample, camera, &r)) continue;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      if (!(r.segment<2>(2 * i).norm() < kP3PResidualTolerance)) ok = false;
    }
    if (ok) solutions.push_back(pose);
  }
  return solutions;
}

std::vector<RigidPose> SolveP3POrThrow(const Correspondence& a,
                                       const Correspondence& b,
                                       const Correspondence& c,
                                       const CameraIntrinsics& camera) {
  std::vector<RigidPose> solutions = SolveP3P(a, b, c, camera);
  if (solutions.empty()) {
    throw Error(ErrorCode::kNoSolution, "P3P produced no valid pose");
  }
  return solutions;
}

}  // namespace pose_forge
