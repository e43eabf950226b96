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

#include "pose_forge/fitting/prosac.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

// SplitMix64 finalizer; decorrelates per-sample seeds.
std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ProsacSampler::ProsacSampler(int num_items, int growth_samples,
                             std::uint64_t seed)
    : num_items_(num_items), seed_(seed) {
  if (num_items < kSampleSize) {
    std::ostringstream msg;
    msg << "sampling needs at least 3 correspondences, got " << num_items;
    throw Error(ErrorCode::kTooFewPoints, msg.str());
  }
  if (growth_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "growth sample count must be >= 1");
  }
  const int m = kSampleSize;
  const int n_max = num_items;
  // Expected count of all-in-top-m samples among growth_samples; the
  // integer bound of the smallest pool is 1.
  double t_n = growth_samples;
  for (int i = 0; i < m; ++i) t_n *= double(m - i) / double(n_max - i);
  growth_bounds_.assign(n_max + 1, 0);
  growth_bounds_[m] = 1;
  for (int n = m; n < n_max; ++n) {
    const double t_next = t_n * (n + 1) / double(n + 1 - m);
    growth_bounds_[n + 1] = growth_bounds_[n] +
                            static_cast<std::int64_t>(std::ceil(t_next - t_n));
    t_n = t_next;
  }
}

int ProsacSampler::PoolSize(std::int64_t t) const {
  const std::int64_t count = t + 1;
  const auto begin = growth_bounds_.begin() + kSampleSize;
  const auto it = std::lower_bound(begin, growth_bounds_.end(), count);
  if (it == growth_bounds_.end()) return num_items_;
  return static_cast<int>(it - growth_bounds_.begin());
}

std::array<int, ProsacSampler::kSampleSize> ProsacSampler::Sample(
    std::int64_t t) const {
  std::mt19937_64 rng(Mix(seed_ ^ Mix(static_cast<std::uint64_t>(t))));
  const int n = PoolSize(t);
  const bool uniform = growth_bounds_[num_items_] < t + 1;
  std::array<int, kSampleSize> sample;
  int drawn = 0;
  int range = n;
  if (!uniform) {
    sample[kSampleSize - 1] = n - 1;
    range = n - 1;
  }
  const int needed = uniform ? kSampleSize : kSampleSize - 1;
  std::uniform_int_distribution<int> dist(0, range - 1);
  while (drawn < needed) {
    const int r = dist(rng);
    if (std::find(sample.begin(), sample.begin() + drawn, r) !=
        sample.begin() + drawn) {
      continue;
    }
    sample[drawn++] = r;
  }
  return sample;
}

}  // namespace pose_forge
