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

#ifndef POSE_FORGE_FITTING_SAMPLE_CHECKS_H_
#define POSE_FORGE_FITTING_SAMPLE_CHECKS_H_

#include <Eigen/Core>

#include "pose_forge/core/correspondence.h"

namespace pose_forge {

inline constexpr double kDefaultMinTriangleArea = 100.0;  // px^2

// Relative tolerance on |(b - a) x (c - a)| against the squared extent of
// the triple below which three 3D points count as collinear.
inline constexpr double kCollinearTolerance = 1e-9;

double TriangleArea(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                    const Eigen::Vector2d& c);

bool AreCollinear(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                  const Eigen::Vector3d& c);

// True when the minimal sample should be rejected: image triangle smaller
// than `min_area` or collinear model points.
bool IsDegenerateSample(const Correspondence& a, const Correspondence& b,
                        const Correspondence& c,
                        double min_area = kDefaultMinTriangleArea);

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_SAMPLE_CHECKS_H_
