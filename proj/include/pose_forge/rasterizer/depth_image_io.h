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

#ifndef POSE_FORGE_RASTERIZER_DEPTH_IMAGE_IO_H_
#define POSE_FORGE_RASTERIZER_DEPTH_IMAGE_IO_H_

#include <cstdint>
#include <string>

#include "pose_forge/core/image.h"

namespace pose_forge {

// 16-bit grayscale PNG with a declared scale: stored_value * scale = mm.
// Values are rounded to the nearest unit and saturate at 65535.
void WriteScaledPng16(const std::string& path, const Image<double>& map,
                      double scale);

// Reads a 16-bit (or 8-bit) grayscale PNG and returns stored_value * scale.
Image<double> ReadScaledPng16(const std::string& path, double scale);

Image<std::uint16_t> QuantizeToUint16(const Image<double>& map, double scale);

}  // namespace pose_forge

#endif  // POSE_FORGE_RASTERIZER_DEPTH_IMAGE_IO_H_
