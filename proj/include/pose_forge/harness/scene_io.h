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

#ifndef POSE_FORGE_HARNESS_SCENE_IO_H_
#define POSE_FORGE_HARNESS_SCENE_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "pose_forge/core/camera.h"
#include "pose_forge/metrics/recall.h"

namespace pose_forge {

// Rotations in input files may deviate from orthonormal by this much per
// entry; they are then projected onto SO(3).
inline constexpr double kInputRotationTolerance = 1e-3;

struct SceneRecord {
  int scene_id = 0;
  int image_id = 0;
  CameraIntrinsics camera;
  double depth_scale = 1.0;  // mm per stored depth unit
  std::vector<GroundTruthInstance> instances;
};

// Parses the ground-truth and camera documents of one scene:
//   gt:     {"<im_id>": [{"obj_id", "cam_R_m2c" (9), "cam_t_m2c" (3),
//                         "visib_fract" (optional)}, ...], ...}
//   camera: {"<im_id>": {"cam_K" (9, row-major), "depth_scale",
//                        "width", "height"}, ...}
// Records are sorted by image id. Throws ParseError (byte offset),
// MissingField and ValidationError.
std::vector<SceneRecord> ParseScene(std::string_view gt_json,
                                    std::string_view camera_json,
                                    int scene_id);
std::vector<SceneRecord> LoadScene(const std::string& gt_path,
                                   const std::string& camera_path,
                                   int scene_id);

// Camera entries only (for fitting, where no ground truth is needed).
std::vector<SceneRecord> ParseSceneCameras(std::string_view camera_json,
                                           int scene_id);

// Inverse of ParseScene; used to build fixtures and the toy dataset.
void WriteScene(const std::vector<SceneRecord>& records,
                const std::string& gt_path, const std::string& camera_path);

// Dataset layout helpers (zero-padded ids, six digits).
std::string PaddedId(int id);
std::string ModelPath(const std::string& dataset, int object_id);
std::string SceneDir(const std::string& dataset, int scene_id);
std::string DepthPath(const std::string& dataset, int scene_id, int image_id);

std::string ReadTextFile(const std::string& path);

}  // namespace pose_forge

#endif  // POSE_FORGE_HARNESS_SCENE_IO_H_
