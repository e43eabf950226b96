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

#ifndef POSE_FORGE_CORE_CORRESPONDENCE_H_
#define POSE_FORGE_CORE_CORRESPONDENCE_H_

#include <Eigen/Core>

namespace pose_forge {

// A potential 2D-3D match: pixel (px), model point (mm) and a confidence in
// (0, 1]. Several correspondences may share one pixel.
struct Correspondence {
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  double confidence = 1.0;
};

}  // namespace pose_forge

#endif  // POSE_FORGE_CORE_CORRESPONDENCE_H_
