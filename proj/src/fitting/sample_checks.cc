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

#include "pose_forge/fitting/sample_checks.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace pose_forge {

double TriangleArea(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                    const Eigen::Vector2d& c) {
  const Eigen::Vector2d ab = b - a;
  const Eigen::Vector2d ac = c - a;
  return 0.5 * std::abs(ab.x() * ac.y() - ab.y() * ac.x());
}

bool AreCollinear(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                  const Eigen::Vector3d& c) {
  const double scale = std::max(
      {(b - a).squaredNorm(), (c - a).squaredNorm(), (c - b).squaredNorm()});
  if (scale == 0.0) return true;
  return (b - a).cross(c - a).norm() < kCollinearTolerance * scale;
}

bool IsDegenerateSample(const Correspondence& a, const Correspondence& b,
                        const Correspondence& c, double min_area) {
  if (!(TriangleArea(a.pixel, b.pixel, c.pixel) >= min_area)) return true;
  return AreCollinear(a.point, b.point, c.point);
}

}  // namespace pose_forge
