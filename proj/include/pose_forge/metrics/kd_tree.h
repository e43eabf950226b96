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

#ifndef POSE_FORGE_METRICS_KD_TREE_H_
#define POSE_FORGE_METRICS_KD_TREE_H_

#include <vector>

#include <Eigen/Core>

namespace pose_forge {

// Static 3D k-d tree for exact nearest-neighbor queries. Queries are const
// and may run concurrently.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(std::vector<Eigen::Vector3d> points);

  bool empty() const { return points_.empty(); }
  int size() const { return static_cast<int>(points_.size()); }

  // Index of the nearest point (lowest index on exact ties is not
  // guaranteed) and its squared distance. Requires a non-empty tree.
  int Nearest(const Eigen::Vector3d& query, double* squared_distance) const;

  double NearestDistance(const Eigen::Vector3d& query) const;

 private:
  struct Node {
    int begin, end;      // range in order_
    int left = -1, right = -1;
    int axis = 0;
    double split = 0.0;
  };
  int Build(int begin, int end, int depth);
  void Search(int node, const Eigen::Vector3d& q, int* best,
              double* best_sq) const;

  std::vector<Eigen::Vector3d> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace pose_forge

#endif  // POSE_FORGE_METRICS_KD_TREE_H_
