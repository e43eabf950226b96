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

#include "pose_forge/fragments/prediction_maps.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

static_assert(std::endian::native == std::endian::little,
              "prediction map I/O assumes a little-endian host");

constexpr std::int64_t kMaxHeaderBytes = 1 << 16;

void CheckRange(const std::vector<float>& values, const char* name) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0f && values[i] <= 1.0f)) {
      std::ostringstream msg;
      msg << name << "[" << i << "] = " << values[i] << " outside [0, 1]";
      throw Error(ErrorCode::kValidationError, msg.str());
    }
  }
}

void WritePlanes(std::ostream& out, const std::vector<float>& values) {
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
}

void ReadPlanes(std::istream& in, std::vector<float>& values,
                std::int64_t& offset) {
  const auto bytes = static_cast<std::streamsize>(values.size() * sizeof(float));
  in.read(reinterpret_cast<char*>(values.data()), bytes);
  if (in.gcount() != bytes) {
    throw ParseError(ParseError::Unit::kByteOffset, offset + in.gcount(),
                     "prediction map data truncated");
  }
  offset += bytes;
}

int RequireInt(const nlohmann::json& header, const char* key) {
  if (!header.contains(key) || !header[key].is_number_integer()) {
    throw ParseError(ParseError::Unit::kByteOffset, 0,
                     std::string("prediction map header lacks integer '") +
                         key + "'");
  }
  return header[key].get<int>();
}

}  // namespace

PredictionMaps::PredictionMaps(int width, int height, int stride,
                               int object_id, int fragment_count)
    : width(width),
      height(height),
      stride(stride),
      object_id(object_id),
      fragment_count(fragment_count) {
  Validate();
  object_prob.assign(plane_size(), 0.0f);
  fragment_prob.assign(plane_size() * fragment_count, 0.0f);
  fragment_coord.assign(plane_size() * 3 * fragment_count, 0.0f);
}

void PredictionMaps::Validate() const {
  if (width <= 0 || height <= 0 || stride <= 0 || fragment_count <= 0) {
    throw Error(ErrorCode::kValidationError,
                "prediction maps need positive width, height, stride and n");
  }
  if (object_prob.empty() && fragment_prob.empty() && fragment_coord.empty()) {
    return;  // header-only (freshly constructed)
  }
  const std::size_t plane = plane_size();
  if (object_prob.size() != plane ||
      fragment_prob.size() != plane * fragment_count ||
      fragment_coord.size() != plane * 3 * fragment_count) {
    throw Error(ErrorCode::kValidationError,
                "prediction map planes do not match the declared grid");
  }
  CheckRange(object_prob, "object_prob");
  CheckRange(fragment_prob, "fragment_prob");
}

void WritePredictionMaps(std::ostream& out, const PredictionMaps& maps) {
  maps.Validate();
  nlohmann::json header = {{"width", maps.width},
                           {"height", maps.height},
                           {"stride", maps.stride},
                           {"object_id", maps.object_id},
                           {"n", maps.fragment_count},
                           {"scene_id", maps.scene_id},
                           {"im_id", maps.image_id}};
  out << header.dump() << '\n';
  WritePlanes(out, maps.object_prob);
  WritePlanes(out, maps.fragment_prob);
  WritePlanes(out, maps.fragment_coord);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing prediction maps");
}

void WritePredictionMaps(const std::string& path, const PredictionMaps& maps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  WritePredictionMaps(out, maps);
}

PredictionMaps ReadPredictionMaps(std::istream& in) {
  std::string line;
  char c = 0;
  while (in.get(c) && c != '\n') {
    line.push_back(c);
    if (static_cast<std::int64_t>(line.size()) > kMaxHeaderBytes) {
      throw ParseError(ParseError::Unit::kByteOffset, kMaxHeaderBytes,
                       "prediction map header line too long");
    }
  }
  if (c != '\n') {
    throw ParseError(ParseError::Unit::kByteOffset,
                     static_cast<std::int64_t>(line.size()),
                     "prediction map header not terminated by a newline");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ParseError::Unit::kByteOffset,
                     static_cast<std::int64_t>(e.byte),
                     std::string("bad prediction map header: ") + e.what());
  }
  PredictionMaps maps;
  maps.width = RequireInt(header, "width");
  maps.height = RequireInt(header, "height");
  maps.stride = RequireInt(header, "stride");
  maps.object_id = RequireInt(header, "object_id");
  maps.fragment_count = RequireInt(header, "n");
  maps.scene_id = header.value("scene_id", 0);
  maps.image_id = header.value("im_id", 0);
  if (maps.width <= 0 || maps.height <= 0 || maps.stride <= 0 ||
      maps.fragment_count <= 0) {
    throw ParseError(ParseError::Unit::kByteOffset, 0,
                     "prediction map header has non-positive dimensions");
  }
  const std::size_t plane = maps.plane_size();
  maps.object_prob.resize(plane);
  maps.fragment_prob.resize(plane * maps.fragment_count);
  maps.fragment_coord.resize(plane * 3 * maps.fragment_count);
  std::int64_t offset = static_cast<std::int64_t>(line.size()) + 1;
  ReadPlanes(in, maps.object_prob, offset);
  ReadPlanes(in, maps.fragment_prob, offset);
  ReadPlanes(in, maps.fragment_coord, offset);
  try {
    maps.Validate();
  } catch (const Error& e) {
    throw ParseError(ParseError::Unit::kByteOffset, offset, e.what());
  }
  return maps;
}

PredictionMaps ReadPredictionMaps(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadPredictionMaps(in);
}

}  // namespace pose_forge
