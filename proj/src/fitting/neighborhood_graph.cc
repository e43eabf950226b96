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

#include "pose_forge/fitting/neighborhood_graph.h"

#include <algorithm>
#include <numeric>

#include "pose_forge/core/error.h"

namespace pose_forge {

Descriptor5 NeighborhoodDescriptor(const Correspondence& c) {
  Descriptor5 d;
  d << c.pixel.x(), c.pixel.y(), c.point.x() / 10.0, c.point.y() / 10.0,
      c.point.z() / 10.0;
  return d;
}

NeighborhoodGraph::NeighborhoodGraph(int num_nodes,
                                     std::vector<std::vector<int>> adjacency) {
  offsets_.assign(num_nodes + 1, 0);
  for (int i = 0; i < num_nodes; ++i) {
    std::sort(adjacency[i].begin(), adjacency[i].end());
    offsets_[i + 1] = offsets_[i] + static_cast<int>(adjacency[i].size());
  }
  neighbors_.reserve(offsets_.back());
  for (const auto& list : adjacency) {
    neighbors_.insert(neighbors_.end(), list.begin(), list.end());
  }
}

std::vector<std::pair<int, int>> NeighborhoodGraph::Edges() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(num_edges());
  for (int i = 0; i < num_nodes(); ++i) {
    for (int j : Neighbors(i)) {
      if (i < j) edges.emplace_back(i, j);
    }
  }
  return edges;
}

NeighborhoodGraph BuildNeighborhoodGraph(const CorrespondenceSet& set,
                                         double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "neighborhood radius must be > 0");
  }
  const int n = set.size();
  std::vector<Descriptor5> desc(n);
  for (int i = 0; i < n; ++i) desc[i] = NeighborhoodDescriptor(set[i]);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return desc[a][0] < desc[b][0]; });
  std::vector<double> sorted_u(n);
  for (int k = 0; k < n; ++k) sorted_u[k] = desc[order[k]][0];

  const double radius_sq = radius * radius;
  std::vector<std::vector<int>> adjacency(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (int k = 0; k < n; ++k) {
    const int i = order[k];
    const double u = sorted_u[k];
    const int lo = static_cast<int>(
        std::lower_bound(sorted_u.begin(), sorted_u.end(), u - radius) -
        sorted_u.begin());
    for (int q = lo; q < n && sorted_u[q] <= u + radius; ++q) {
      const int j = order[q];
      if (j == i) continue;
      if ((desc[i] - desc[j]).squaredNorm() < radius_sq) {
        adjacency[i].push_back(j);
      }
    }
  }
  return NeighborhoodGraph(n, std::move(adjacency));
}

}  // namespace pose_forge
