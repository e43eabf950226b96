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

#include "pose_forge/harness/scene_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

using nlohmann::json;

json ParseJson(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Unit::kByteOffset,
                     static_cast<std::int64_t>(e.byte),
                     what + ": " + e.what());
  }
}

const json& Field(const json& object, const char* name, const std::string& where) {
  if (!object.is_object() || !object.contains(name)) {
    throw Error(ErrorCode::kMissingField,
                where + ": missing field '" + std::string(name) + "'");
  }
  return object.at(name);
}

std::vector<double> Numbers(const json& value, std::size_t count,
                            const std::string& where) {
  if (!value.is_array() || value.size() != count) {
    std::ostringstream msg;
    msg << where << ": expected " << count << " numbers";
    throw Error(ErrorCode::kValidationError, msg.str());
  }
  std::vector<double> out;
  for (const json& v : value) {
    if (!v.is_number()) throw Error(ErrorCode::kValidationError, where + ": non-numeric value");
    out.push_back(v.get<double>());
  }
  return out;
}

int ImageId(const std::string& key, const std::string& what) {
  try {
    std::size_t used = 0;
    const int id = std::stoi(key, &used);
    if (used == key.size()) return id;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kValidationError, what + ": bad image id '" + key + "'");
}

CameraIntrinsics ParseCamera(const json& entry, const std::string& where,
                             double* depth_scale) {
  const std::vector<double> k = Numbers(Field(entry, "cam_K", where), 9, where + " cam_K");
  CameraIntrinsics cam;
  cam.fx = k[0];
  cam.cx = k[2];
  cam.fy = k[4];
  cam.cy = k[5];
  if (k[1] != 0.0 || k[3] != 0.0 || k[6] != 0.0 || k[7] != 0.0 || k[8] != 1.0) {
    throw Error(ErrorCode::kValidationError,
                where + ": cam_K must be [fx 0 cx; 0 fy cy; 0 0 1]");
  }
  cam.width = Field(entry, "width", where).get<int>();
  cam.height = Field(entry, "height", where).get<int>();
  cam.Validate();
  *depth_scale = entry.contains("depth_scale") ? entry.at("depth_scale").get<double>() : 1.0;
  if (!(*depth_scale > 0.0) || !std::isfinite(*depth_scale)) {
    throw Error(ErrorCode::kValidationError, where + ": depth_scale must be > 0");
  }
  return cam;
}

template <typename Fn>
auto WithJsonErrors(Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidationError, e.what());
  }
}

std::vector<SceneRecord> ParseSceneCamerasImpl(std::string_view camera_json,
                                               int scene_id) {
  const json cameras = ParseJson(camera_json, "scene camera file");
  if (!cameras.is_object()) {
    throw Error(ErrorCode::kValidationError, "scene camera file must be an object");
  }
  std::vector<SceneRecord> records;
  for (const auto& [key, entry] : cameras.items()) {
    SceneRecord r;
    r.scene_id = scene_id;
    r.image_id = ImageId(key, "scene camera file");
    r.camera = ParseCamera(entry, "camera of image " + key, &r.depth_scale);
    records.push_back(std::move(r));
  }
  std::sort(records.begin(), records.end(),
            [](const SceneRecord& a, const SceneRecord& b) { return a.image_id < b.image_id; });
  return records;
}

std::vector<SceneRecord> ParseSceneImpl(std::string_view gt_json,
                                        std::string_view camera_json,
                                        int scene_id) {
  std::vector<SceneRecord> records = ParseSceneCamerasImpl(camera_json, scene_id);
  const json gt = ParseJson(gt_json, "scene ground-truth file");
  if (!gt.is_object()) {
    throw Error(ErrorCode::kValidationError, "scene ground-truth file must be an object");
  }
  for (const auto& [key, list] : gt.items()) {
    const int image_id = ImageId(key, "scene ground-truth file");
    auto it = std::find_if(records.begin(), records.end(),
                           [&](const SceneRecord& r) { return r.image_id == image_id; });
    if (it == records.end()) {
      throw Error(ErrorCode::kMissingField, "no camera entry for image " + key);
    }
    if (!list.is_array()) {
      throw Error(ErrorCode::kValidationError, "ground truth of image " + key + " must be a list");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "instance " + std::to_string(i) + " of image " + key;
      const json& entry = list[i];
      const std::vector<double> r = Numbers(Field(entry, "cam_R_m2c", where), 9, where + " cam_R_m2c");
      const std::vector<double> t = Numbers(Field(entry, "cam_t_m2c", where), 3, where + " cam_t_m2c");
      Eigen::Matrix3d rot;
      rot << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
      GroundTruthInstance inst;
      try {
        MakeRigidPose(rot, Eigen::Vector3d(t[0], t[1], t[2]), kInputRotationTolerance);
      } catch (const Error&) {
        throw Error(ErrorCode::kValidationError, where + ": rotation is not orthonormal");
      }
      inst.pose.rotation = ProjectToRotation(rot);
      inst.pose.translation = Eigen::Vector3d(t[0], t[1], t[2]);
      inst.object_id = Field(entry, "obj_id", where).get<int>();
      if (entry.contains("visib_fract")) {
        inst.visible_fraction = entry.at("visib_fract").get<double>();
        if (!(inst.visible_fraction >= 0.0 && inst.visible_fraction <= 1.0)) {
          throw Error(ErrorCode::kValidationError, where + ": visib_fract outside [0, 1]");
        }
      }
      it->instances.push_back(inst);
    }
  }
  return records;
}

}  // namespace

std::vector<SceneRecord> ParseSceneCameras(std::string_view camera_json,
                                           int scene_id) {
  return WithJsonErrors([&] { return ParseSceneCamerasImpl(camera_json, scene_id); });
}

std::vector<SceneRecord> ParseScene(std::string_view gt_json,
                                    std::string_view camera_json, int scene_id) {
  return WithJsonErrors([&] { return ParseSceneImpl(gt_json, camera_json, scene_id); });
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<SceneRecord> LoadScene(const std::string& gt_path,
                                   const std::string& camera_path, int scene_id) {
  return ParseScene(ReadTextFile(gt_path), ReadTextFile(camera_path), scene_id);
}

void WriteScene(const std::vector<SceneRecord>& records,
                const std::string& gt_path, const std::string& camera_path) {
  json gt = json::object();
  json cams = json::object();
  for (const SceneRecord& r : records) {
    const std::string key = std::to_string(r.image_id);
    const CameraIntrinsics& c = r.camera;
    cams[key] = {{"cam_K", {c.fx, 0.0, c.cx, 0.0, c.fy, c.cy, 0.0, 0.0, 1.0}},
                 {"depth_scale", r.depth_scale},
                 {"width", c.width},
                 {"height", c.height}};
    json list = json::array();
    for (const GroundTruthInstance& inst : r.instances) {
      std::vector<double> rot;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) rot.push_back(inst.pose.rotation(i, j));
      }
      const auto& t = inst.pose.translation;
      list.push_back({{"obj_id", inst.object_id},
                      {"cam_R_m2c", rot},
                      {"cam_t_m2c", {t.x(), t.y(), t.z()}},
                      {"visib_fract", inst.visible_fraction}});
    }
    gt[key] = list;
  }
  auto write = [](const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
    out << doc.dump(1) << '\n';
  };
  write(gt_path, gt);
  write(camera_path, cams);
}

std::string PaddedId(int id) {
  std::ostringstream s;
  s << std::setw(6) << std::setfill('0') << id;
  return s.str();
}

std::string ModelPath(const std::string& dataset, int object_id) {
  return dataset + "/models/obj_" + PaddedId(object_id) + ".ply";
}

std::string SceneDir(const std::string& dataset, int scene_id) {
  return dataset + "/test/" + PaddedId(scene_id);
}

std::string DepthPath(const std::string& dataset, int scene_id, int image_id) {
  return SceneDir(dataset, scene_id) + "/depth/" + PaddedId(image_id) + ".png";
}

}  // namespace pose_forge
