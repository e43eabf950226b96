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

#ifndef POSE_FORGE_FITTING_PROSAC_H_
#define POSE_FORGE_FITTING_PROSAC_H_

#include <array>
#include <cstdint>
#include <vector>

namespace pose_forge {

// PROSAC sampling over items ranked by decreasing confidence. Sample t
// (0-based) draws from the smallest top-n prefix whose growth bound covers
// t+1: it always contains rank n-1 plus two ranks from the top n-1.
// Once the bound exceeds every prefix the draw is uniform over all items.
// Samples are a pure function of (seed, t), so any sample can be
// reproduced without replaying the sequence.
class ProsacSampler {
 public:
  static constexpr int kSampleSize = 3;

  // `growth_samples` is the number of samples after which sampling becomes
  // uniform. Throws TooFewPoints when num_items < 3.
  ProsacSampler(int num_items, int growth_samples, std::uint64_t seed);

  // Ranks (positions in the confidence order) of sample `t`.
  std::array<int, kSampleSize> Sample(std::int64_t t) const;

  // Size of the prefix pool used by sample `t`.
  int PoolSize(std::int64_t t) const;

  int num_items() const { return num_items_; }

 private:
  int num_items_;
  std::uint64_t seed_;
  // growth_bounds_[n]: samples drawn before the pool grows past n, n in [3, N].
  std::vector<std::int64_t> growth_bounds_;
};

// Maps ranks to correspondence indices via a confidence order.
inline std::array<int, 3> RanksToIndices(const std::array<int, 3>& ranks,
                                         const std::vector<int>& order) {
  return {order[ranks[0]], order[ranks[1]], order[ranks[2]]};
}

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_PROSAC_H_
