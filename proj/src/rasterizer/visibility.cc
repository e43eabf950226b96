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

#include "pose_forge/rasterizer/visibility.h"

#include <sstream>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

template <typename A, typename B>
void RequireSameSize(const Image<A>& a, const Image<B>& b, const char* what) {
  if (!a.SameSize(b)) {
    std::ostringstream msg;
    msg << what << ": " << a.width() << "x" << a.height() << " vs "
        << b.width() << "x" << b.height();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

}  // namespace

VisibilityMasks ComputeVisibilityMasks(const DistanceMap& estimate,
                                       const DistanceMap& ground_truth,
                                       const DistanceMap& scene, double delta) {
  RequireSameSize(estimate, ground_truth, "estimate vs ground-truth map");
  RequireSameSize(ground_truth, scene, "ground-truth vs scene map");
  VisibilityMasks masks{PixelMask(scene.width(), scene.height(), 0),
                        PixelMask(scene.width(), scene.height(), 0)};
  const auto n = static_cast<std::ptrdiff_t>(scene.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double d_scene = scene[i];
    const double d_gt = ground_truth[i];
    const double d_est = estimate[i];
    const bool gt_visible =
        d_gt > 0.0 && (d_gt - d_scene <= delta || d_scene == 0.0);
    const bool est_visible =
        d_est > 0.0 &&
        (d_est - d_scene <= delta || d_scene == 0.0 || gt_visible);
    masks.ground_truth[i] = gt_visible;
    masks.estimate[i] = est_visible;
  }
  return masks;
}

std::size_t CountNonZero(const PixelMask& mask) {
  std::size_t count = 0;
  for (auto value : mask.data()) count += value != 0;
  return count;
}

double VisibleFraction(const PixelMask& mask, const DistanceMap& rendered) {
  RequireSameSize(mask, rendered, "mask vs rendered map");
  std::size_t projected = 0;
  std::size_t visible = 0;
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    if (rendered[i] > 0.0) {
      ++projected;
      visible += mask[i] != 0;
    }
  }
  if (projected == 0) {
    throw Error(ErrorCode::kEmptyProjection, "the object projects to no pixel");
  }
  return static_cast<double>(visible) / static_cast<double>(projected);
}

}  // namespace pose_forge
