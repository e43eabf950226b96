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

#ifndef POSE_FORGE_FRAGMENTS_PREDICTION_MAPS_H_
#define POSE_FORGE_FRAGMENTS_PREDICTION_MAPS_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pose_forge {

inline constexpr int kDefaultPredictionStride = 4;

// Dense per-object network outputs on a grid sampling the image every
// `stride` pixels. Planes are row-major over the grid:
//   object_prob      1 plane
//   fragment_prob    n planes, plane f holds b_f
//   fragment_coord   3n planes, plane 3f + c holds component c of r_f
//
// File layout: one line of JSON with keys width, height, stride, object_id,
// n (plus optional scene_id, im_id), a '\n', then all planes above as
// little-endian float32 in that order, each ceil(width/stride) *
// ceil(height/stride) values long.
struct PredictionMaps {
  int width = 0;   // image width, px
  int height = 0;  // image height, px
  int stride = kDefaultPredictionStride;
  int object_id = 0;
  int fragment_count = 0;
  int scene_id = 0;
  int image_id = 0;

  std::vector<float> object_prob;
  std::vector<float> fragment_prob;
  std::vector<float> fragment_coord;

  PredictionMaps() = default;
  PredictionMaps(int width, int height, int stride, int object_id,
                 int fragment_count);

  int grid_width() const { return (width + stride - 1) / stride; }
  int grid_height() const { return (height + stride - 1) / stride; }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(grid_width()) * grid_height();
  }

  std::size_t Cell(int gx, int gy) const {
    return static_cast<std::size_t>(gy) * grid_width() + gx;
  }

  float& ObjectProb(std::size_t cell) { return object_prob[cell]; }
  float ObjectProb(std::size_t cell) const { return object_prob[cell]; }
  float& FragmentProb(int f, std::size_t cell) {
    return fragment_prob[f * plane_size() + cell];
  }
  float FragmentProb(int f, std::size_t cell) const {
    return fragment_prob[f * plane_size() + cell];
  }
  float& FragmentCoord(int f, int c, std::size_t cell) {
    return fragment_coord[(3 * f + c) * plane_size() + cell];
  }
  float FragmentCoord(int f, int c, std::size_t cell) const {
    return fragment_coord[(3 * f + c) * plane_size() + cell];
  }

  // Image coordinates of the center of grid cell (gx, gy).
  Eigen::Vector2d CellCenter(int gx, int gy) const {
    const double offset = (stride - 1) / 2.0;
    return {gx * stride + offset, gy * stride + offset};
  }

  // Throws ValidationError on bad sizes or probabilities outside [0, 1].
  void Validate() const;
};

void WritePredictionMaps(std::ostream& out, const PredictionMaps& maps);
void WritePredictionMaps(const std::string& path, const PredictionMaps& maps);

// Throws ParseError (byte offset) on malformed or truncated input.
PredictionMaps ReadPredictionMaps(std::istream& in);
PredictionMaps ReadPredictionMaps(const std::string& path);

}  // namespace pose_forge

#endif  // POSE_FORGE_FRAGMENTS_PREDICTION_MAPS_H_
