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

#include "pose_forge/harness/symmetry_io.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pose_forge/core/error.h"
#include "pose_forge/harness/scene_io.h"

namespace pose_forge {
namespace {

using nlohmann::json;

std::vector<double> Numbers(const json& value, std::size_t count,
                            const std::string& where) {
  if (!value.is_array() || value.size() != count) {
    std::ostringstream msg;
    msg << where << ": expected " << count << " numbers";
    throw Error(ErrorCode::kValidationError, msg.str());
  }
  std::vector<double> out;
  for (const json& v : value) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kValidationError, where + ": non-numeric value");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

const json& Field(const json& object, const char* name, const std::string& where) {
  if (!object.contains(name)) {
    throw Error(ErrorCode::kMissingField,
                where + ": missing field '" + std::string(name) + "'");
  }
  return object.at(name);
}

RigidPose ParseTransform(const json& entry, const std::string& where) {
  if (!entry.is_object()) {
    throw Error(ErrorCode::kValidationError, where + ": expected an object");
  }
  const std::vector<double> r = Numbers(Field(entry, "R", where), 9, where + ".R");
  const std::vector<double> t = Numbers(Field(entry, "t", where), 3, where + ".t");
  Eigen::Matrix3d rotation;
  rotation << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
  RigidPose pose = MakeRigidPose(rotation, Eigen::Vector3d(t[0], t[1], t[2]),
                                 kInputRotationTolerance);
  pose.rotation = ProjectToRotation(pose.rotation);
  return pose;
}

ContinuousSymmetry ParseContinuous(const json& entry, const std::string& where) {
  if (!entry.is_object()) {
    throw Error(ErrorCode::kValidationError, where + ": expected an object");
  }
  ContinuousSymmetry s;
  const std::vector<double> axis = Numbers(Field(entry, "axis", where), 3, where + ".axis");
  s.axis = Eigen::Vector3d(axis[0], axis[1], axis[2]);
  if (!(s.axis.norm() > 0.0) || !s.axis.allFinite()) {
    throw Error(ErrorCode::kValidationError, where + ": zero axis");
  }
  s.axis.normalize();
  if (entry.contains("offset")) {
    const std::vector<double> o = Numbers(entry.at("offset"), 3, where + ".offset");
    s.offset = Eigen::Vector3d(o[0], o[1], o[2]);
  }
  if (entry.contains("steps")) {
    if (!entry.at("steps").is_number_integer() || entry.at("steps").get<int>() < 1) {
      throw Error(ErrorCode::kValidationError, where + ": steps must be a positive integer");
    }
    s.steps = entry.at("steps").get<int>();
  }
  return s;
}

std::map<int, SymmetryAnnotation> ParseImpl(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Unit::kByteOffset,
                     static_cast<std::int64_t>(e.byte),
                     std::string("symmetry file: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kValidationError, "symmetry file must be an object");
  }
  std::map<int, SymmetryAnnotation> table;
  for (const auto& [key, entry] : doc.items()) {
    int id = 0;
    std::size_t used = 0;
    try {
      id = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) {
      throw Error(ErrorCode::kValidationError, "symmetry file: bad object id '" + key + "'");
    }
    const std::string where = "symmetries of object " + key;
    if (!entry.is_object()) {
      throw Error(ErrorCode::kValidationError, where + ": expected an object");
    }
    SymmetryAnnotation a;
    if (entry.contains("discrete")) {
      int i = 0;
      for (const json& t : entry.at("discrete")) {
        a.discrete.push_back(ParseTransform(t, where + ".discrete[" + std::to_string(i++) + "]"));
      }
    }
    if (entry.contains("continuous")) {
      int i = 0;
      for (const json& c : entry.at("continuous")) {
        a.continuous.push_back(
            ParseContinuous(c, where + ".continuous[" + std::to_string(i++) + "]"));
      }
    }
    table[id] = std::move(a);
  }
  return table;
}

bool SameTransform(const RigidPose& a, const RigidPose& b) {
  return (a.rotation - b.rotation).cwiseAbs().maxCoeff() < 1e-9 &&
         (a.translation - b.translation).cwiseAbs().maxCoeff() < 1e-6;
}

}  // namespace

std::map<int, SymmetryAnnotation> ParseSymmetries(std::string_view json_text) {
  try {
    return ParseImpl(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidationError, e.what());
  }
}

std::map<int, SymmetryAnnotation> LoadSymmetries(const std::string& path) {
  return ParseSymmetries(ReadTextFile(path));
}

std::string FormatSymmetries(const std::map<int, SymmetryAnnotation>& table) {
  json doc = json::object();
  for (const auto& [id, a] : table) {
    json entry = json::object();
    json discrete = json::array();
    for (const RigidPose& p : a.discrete) {
      json r = json::array();
      for (int i = 0; i < 9; ++i) r.push_back(p.rotation(i / 3, i % 3));
      discrete.push_back({{"R", r},
                          {"t", {p.translation.x(), p.translation.y(), p.translation.z()}}});
    }
    entry["discrete"] = discrete;
    if (!a.continuous.empty()) {
      json continuous = json::array();
      for (const ContinuousSymmetry& c : a.continuous) {
        continuous.push_back({{"axis", {c.axis.x(), c.axis.y(), c.axis.z()}},
                              {"offset", {c.offset.x(), c.offset.y(), c.offset.z()}},
                              {"steps", c.steps}});
      }
      entry["continuous"] = continuous;
    }
    doc[std::to_string(id)] = entry;
  }
  return doc.dump(2) + "\n";
}

void WriteSymmetries(const std::string& path,
                     const std::map<int, SymmetryAnnotation>& table) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << FormatSymmetries(table);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

std::vector<RigidPose> ExpandSymmetries(const SymmetryAnnotation& annotation) {
  std::vector<RigidPose> discrete = {RigidPose::Identity()};
  discrete.insert(discrete.end(), annotation.discrete.begin(),
                  annotation.discrete.end());

  std::vector<RigidPose> continuous = {RigidPose::Identity()};
  for (const ContinuousSymmetry& c : annotation.continuous) {
    std::vector<RigidPose> next;
    for (int k = 0; k < c.steps; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / c.steps;
      RigidPose rot;
      rot.rotation = AxisAngleToRotation(angle * c.axis);
      rot.translation = c.offset - rot.rotation * c.offset;
      for (const RigidPose& p : continuous) next.push_back(rot * p);
    }
    continuous = std::move(next);
  }

  std::vector<RigidPose> out;
  for (const RigidPose& c : continuous) {
    for (const RigidPose& d : discrete) {
      const RigidPose s = c * d;
      bool seen = false;
      for (const RigidPose& o : out) {
        if (SameTransform(o, s)) {
          seen = true;
          break;
        }
      }
      if (!seen) out.push_back(s);
    }
  }
  return out;
}

}  // namespace pose_forge
