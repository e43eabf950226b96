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

#ifndef POSE_FORGE_FITTING_MAX_FLOW_H_
#define POSE_FORGE_FITTING_MAX_FLOW_H_

#include <cstdint>
#include <vector>

namespace pose_forge {

// Dinic's augmenting-path max-flow on a directed graph with real
// capacities. Node ids are [0, num_nodes).
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  // Adds arc u->v with capacity `forward` and v->u with `backward`.
  void AddEdge(int u, int v, double forward, double backward = 0.0);

  double Solve(int source, int sink);

  // After Solve: true for nodes reachable from the source in the residual
  // graph (the source side of a minimum cut).
  bool OnSourceSide(int node) const { return source_side_[node] != 0; }

  int num_nodes() const { return static_cast<int>(first_.size()); }

 private:
  bool BuildLevels(int source, int sink);
  double Push(int node, int sink, double limit);

  struct Arc {
    int to;
    int next;
    double residual;
  };
  std::vector<Arc> arcs_;
  std::vector<int> first_;
  std::vector<int> level_;
  std::vector<int> cursor_;
  std::vector<std::uint8_t> source_side_;
};

// Pseudo-boolean energy sum_i E_i(x_i) + sum_(i,j) E_ij(x_i, x_j) over
// binary variables, minimized exactly by one s-t min cut when every pair
// term is submodular (E00 + E11 <= E01 + E10).
class BinaryEnergy {
 public:
  explicit BinaryEnergy(int num_vars);

  void AddUnary(int i, double e0, double e1);
  // Throws InvalidArgument if the term is not submodular.
  void AddPairwise(int i, int j, double e00, double e01, double e10,
                   double e11);

  double Evaluate(const std::vector<std::uint8_t>& labels) const;

  // Returns a minimizing labeling; `energy` receives its value.
  std::vector<std::uint8_t> Minimize(double* energy = nullptr) const;

  int num_vars() const { return static_cast<int>(unary_.size()); }

 private:
  struct Pair {
    int i, j;
    double e00, e01, e10, e11;
  };
  std::vector<std::pair<double, double>> unary_;
  std::vector<Pair> pairs_;
};

}  // namespace pose_forge

#endif  // POSE_FORGE_FITTING_MAX_FLOW_H_
