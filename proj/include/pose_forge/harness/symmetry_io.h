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

#ifndef POSE_FORGE_HARNESS_SYMMETRY_IO_H_
#define POSE_FORGE_HARNESS_SYMMETRY_IO_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pose_forge/core/geometry.h"

namespace pose_forge {

// Rotation about `axis` through `offset`, sampled every 360/steps degrees.
struct ContinuousSymmetry {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  int steps = 360;
};

struct SymmetryAnnotation {
  std::vector<RigidPose> discrete;
  std::vector<ContinuousSymmetry> continuous;
};

// {"<obj_id>": {"discrete": [{"R": [9], "t": [3]}, ...],
//               "continuous": [{"axis": [3], "offset": [3], "steps": k}]}}
// Both lists are optional. Throws ParseError (byte offset), MissingField
// and ValidationError (rotations checked at kInputRotationTolerance).
std::map<int, SymmetryAnnotation> ParseSymmetries(std::string_view json_text);
std::map<int, SymmetryAnnotation> LoadSymmetries(const std::string& path);

// Stable text: keys sorted, doubles at full precision.
std::string FormatSymmetries(const std::map<int, SymmetryAnnotation>& table);
void WriteSymmetries(const std::string& path,
                     const std::map<int, SymmetryAnnotation>& table);

// Every product c * d of a sampled continuous rotation c and a discrete
// transform d (identity included in both factors). Identity comes first
// and exact duplicates are dropped.
std::vector<RigidPose> ExpandSymmetries(const SymmetryAnnotation& annotation);

}  // namespace pose_forge

#endif  // POSE_FORGE_HARNESS_SYMMETRY_IO_H_
