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

#ifndef POSE_FORGE_RASTERIZER_VISIBILITY_H_
#define POSE_FORGE_RASTERIZER_VISIBILITY_H_

#include "pose_forge/core/image.h"

namespace pose_forge {

inline constexpr double kDefaultVisibilityTolerance = 15.0;  // delta, mm

struct VisibilityMasks {
  PixelMask estimate;      // V-hat
  PixelMask ground_truth;  // V-bar
};

// Visibility of the model surface in the test image.
//
//   V-bar = { u | Dgt(u) > 0 and (Dgt(u) - Dscene(u) <= delta or Dscene(u) = 0) }
//   V-hat = { u | Dest(u) > 0 and (Dest(u) - Dscene(u) <= delta or
//                                  Dscene(u) = 0 or u in V-bar) }
//
// Throws DimensionMismatch unless all three maps have the same size.
VisibilityMasks ComputeVisibilityMasks(const DistanceMap& estimate,
                                       const DistanceMap& ground_truth,
                                       const DistanceMap& scene,
                                       double delta = kDefaultVisibilityTolerance);

// |mask| / |{u : rendered(u) > 0}|. Throws EmptyProjection if nothing was
// rendered and DimensionMismatch on differing sizes.
double VisibleFraction(const PixelMask& mask, const DistanceMap& rendered);

std::size_t CountNonZero(const PixelMask& mask);

}  // namespace pose_forge

#endif  // POSE_FORGE_RASTERIZER_VISIBILITY_H_
