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

#include "pose_forge/fitting/correspondence_set.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pose_forge/core/error.h"

namespace pose_forge {

CorrespondenceSet::CorrespondenceSet(std::vector<Correspondence> correspondences)
    : correspondences_(std::move(correspondences)) {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const double s = correspondences_[i].confidence;
    if (!(s > 0.0 && s <= 1.0)) {
      std::ostringstream msg;
      msg << "correspondence " << i << " has confidence " << s
          << " outside (0, 1]";
      throw Error(ErrorCode::kValidationError, msg.str());
    }
  }

  std::vector<int> by_pixel(n);
  std::iota(by_pixel.begin(), by_pixel.end(), 0);
  std::stable_sort(by_pixel.begin(), by_pixel.end(), [&](int a, int b) {
    const auto& pa = correspondences_[a].pixel;
    const auto& pb = correspondences_[b].pixel;
    if (pa.y() != pb.y()) return pa.y() < pb.y();
    return pa.x() < pb.x();
  });
  group_members_ = by_pixel;
  for (int k = 1; k < n; ++k) {
    if (correspondences_[by_pixel[k]].pixel !=
        correspondences_[by_pixel[k - 1]].pixel) {
      group_offsets_.push_back(k);
    }
  }
  if (n > 0) group_offsets_.push_back(n);

  confidence_order_.resize(n);
  std::iota(confidence_order_.begin(), confidence_order_.end(), 0);
  std::stable_sort(confidence_order_.begin(), confidence_order_.end(),
                   [&](int a, int b) {
                     return correspondences_[a].confidence >
                            correspondences_[b].confidence;
                   });
}

}  // namespace pose_forge
