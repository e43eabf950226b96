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

#ifndef POSE_FORGE_HARNESS_PLY_H_
#define POSE_FORGE_HARNESS_PLY_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "pose_forge/core/mesh.h"

namespace pose_forge {

enum class PlyFormat { kAscii, kBinaryLittleEndian };

// Reads vertex positions (mm), optional normals and triangles; colors and
// unknown properties or elements are skipped. Polygons are fan
// triangulated. Malformed input raises ParseError with the byte offset;
// big-endian files and unknown property types raise UnsupportedElement.
TriangleMesh ParsePly(std::string_view data);
TriangleMesh ReadPly(std::istream& in);
TriangleMesh ReadPly(const std::string& path);

// Positions and normals are written as doubles so a round trip is exact.
void WritePly(std::ostream& out, const TriangleMesh& mesh,
              PlyFormat format = PlyFormat::kBinaryLittleEndian);
void WritePly(const std::string& path, const TriangleMesh& mesh,
              PlyFormat format = PlyFormat::kBinaryLittleEndian);

}  // namespace pose_forge

#endif  // POSE_FORGE_HARNESS_PLY_H_
