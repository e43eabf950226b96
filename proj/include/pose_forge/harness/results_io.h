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

#ifndef POSE_FORGE_HARNESS_RESULTS_IO_H_
#define POSE_FORGE_HARNESS_RESULTS_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "pose_forge/core/geometry.h"

namespace pose_forge {

struct ResultRecord {
  int scene_id = 0;
  int image_id = 0;
  int object_id = 0;
  double score = 0.0;
  RigidPose pose;
  double time = 0.0;  // seconds
};

inline constexpr char kResultsHeader[] = "scene_id,im_id,obj_id,score,R,t,time";

// CSV with the header above; R is 9 space-separated values (row-major),
// t 3 values in mm. Values are written with max_digits10 precision.
void WriteResults(std::ostream& out, const std::vector<ResultRecord>& records);
void WriteResults(const std::string& path, const std::vector<ResultRecord>& records);

// Header line optional; blank lines skipped. Any malformed line raises
// ParseError with its 1-based line number.
std::vector<ResultRecord> ReadResults(std::istream& in);
std::vector<ResultRecord> ReadResults(const std::string& path);

// Canonical order: scene, image, object, then decreasing score.
void SortResults(std::vector<ResultRecord>* records);

}  // namespace pose_forge

#endif  // POSE_FORGE_HARNESS_RESULTS_IO_H_
