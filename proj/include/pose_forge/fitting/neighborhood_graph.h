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

#ifndef POSE_FORGE_FITTING_NEIGHBORHOOD_GRAPH_H_
#define POSE_FORGE_FITTING_NEIGHBORHOOD_GRAPH_H_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pose_forge/fitting/correspondence_set.h"

namespace pose_forge {

inline constexpr double kDefaultNeighborhoodRadius = 20.0;

// 5D descriptor: pixel in px, model point converted from mm to cm.
using Descriptor5 = Eigen::Matrix<double, 5, 1>;
Descriptor5 NeighborhoodDescriptor(const Correspondence& c);

// Undirected graph in CSR form. Neighbor lists are sorted ascending.
class NeighborhoodGraph {
 public:
  NeighborhoodGraph() = default;
  NeighborhoodGraph(int num_nodes, std::vector<std::vector<int>> adjacency);

  int num_nodes() const { return static_cast<int>(offsets_.size()) - 1; }
  int num_edges() const { return static_cast<int>(neighbors_.size()) / 2; }
  std::span<const int> Neighbors(int i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  // Each undirected edge once, as (i, j) with i < j, in lexicographic order.
  std::vector<std::pair<int, int>> Edges() const;

 private:
  std::vector<int> offsets_{0};
  std::vector<int> neighbors_;
};

// Edge iff descriptor distance < radius. Sweep over the pixel x
// coordinate, parallel over nodes.
NeighborhoodGraph BuildNeighborhoodGraph(
    const CorrespondenceSet& set, double radius = kDefaultNeighborhoodRadius);

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_NEIGHBORHOOD_GRAPH_H_
