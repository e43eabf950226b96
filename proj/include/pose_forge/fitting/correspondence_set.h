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

#ifndef POSE_FORGE_FITTING_CORRESPONDENCE_SET_H_
#define POSE_FORGE_FITTING_CORRESPONDENCE_SET_H_

#include <span>
#include <vector>

#include "pose_forge/core/correspondence.h"

namespace pose_forge {

// Correspondences of one object together with their grouping by pixel
// (correspondences established at exactly the same pixel form one group).
class CorrespondenceSet {
 public:
  CorrespondenceSet() = default;
  explicit CorrespondenceSet(std::vector<Correspondence> correspondences);

  int size() const { return static_cast<int>(correspondences_.size()); }
  bool empty() const { return correspondences_.empty(); }
  const Correspondence& operator[](int i) const { return correspondences_[i]; }
  const std::vector<Correspondence>& correspondences() const {
    return correspondences_;
  }

  int num_pixels() const { return static_cast<int>(group_offsets_.size()) - 1; }
  // Members of pixel group g, ascending.
  std::span<const int> PixelGroup(int g) const {
    return {group_members_.data() + group_offsets_[g],
            group_members_.data() + group_offsets_[g + 1]};
  }

  // Indices sorted by decreasing confidence, ties by index.
  const std::vector<int>& confidence_order() const { return confidence_order_; }

 private:
  std::vector<Correspondence> correspondences_;
  std::vector<int> group_offsets_{0};
  std::vector<int> group_members_;
  std::vector<int> confidence_order_;
};

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_CORRESPONDENCE_SET_H_
