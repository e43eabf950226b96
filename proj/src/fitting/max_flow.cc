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

#include "pose_forge/fitting/max_flow.h"

#include <algorithm>
#include <limits>
#include <queue>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

// Residual capacities at or below this are treated as saturated.
constexpr double kFlowEpsilon = 1e-12;

}  // namespace

MaxFlow::MaxFlow(int num_nodes)
    : first_(num_nodes, -1), source_side_(num_nodes, 0) {}

void MaxFlow::AddEdge(int u, int v, double forward, double backward) {
  arcs_.push_back({v, first_[u], forward});
  first_[u] = static_cast<int>(arcs_.size()) - 1;
  arcs_.push_back({u, first_[v], backward});
  first_[v] = static_cast<int>(arcs_.size()) - 1;
}

bool MaxFlow::BuildLevels(int source, int sink) {
  level_.assign(first_.size(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int a = first_[u]; a != -1; a = arcs_[a].next) {
      const Arc& arc = arcs_[a];
      if (arc.residual > kFlowEpsilon && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::Push(int node, int sink, double limit) {
  if (node == sink) return limit;
  for (int& a = cursor_[node]; a != -1; a = arcs_[a].next) {
    Arc& arc = arcs_[a];
    if (arc.residual <= kFlowEpsilon || level_[arc.to] != level_[node] + 1) {
      continue;
    }
    const double pushed = Push(arc.to, sink, std::min(limit, arc.residual));
    if (pushed > 0.0) {
      arc.residual -= pushed;
      arcs_[a ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::Solve(int source, int sink) {
  double flow = 0.0;
  while (BuildLevels(source, sink)) {
    cursor_ = first_;
    while (true) {
      const double pushed =
          Push(source, sink, std::numeric_limits<double>::infinity());
      if (pushed <= 0.0) break;
      flow += pushed;
    }
  }
  // The last BFS marks exactly the residual-reachable set.
  for (std::size_t i = 0; i < first_.size(); ++i) {
    source_side_[i] = level_[i] >= 0 ? 1 : 0;
  }
  return flow;
}

BinaryEnergy::BinaryEnergy(int num_vars) : unary_(num_vars, {0.0, 0.0}) {}

void BinaryEnergy::AddUnary(int i, double e0, double e1) {
  unary_[i].first += e0;
  unary_[i].second += e1;
}

void BinaryEnergy::AddPairwise(int i, int j, double e00, double e01,
                               double e10, double e11) {
  if (e00 + e11 > e01 + e10 + 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "pairwise term is not submodular");
  }
  pairs_.push_back({i, j, e00, e01, e10, e11});
}

double BinaryEnergy::Evaluate(const std::vector<std::uint8_t>& labels) const {
  double e = 0.0;
  for (int i = 0; i < num_vars(); ++i) {
    e += labels[i] ? unary_[i].second : unary_[i].first;
  }
  for (const Pair& p : pairs_) {
    const int a = labels[p.i] ? 1 : 0;
    const int b = labels[p.j] ? 1 : 0;
    e += a == 0 ? (b == 0 ? p.e00 : p.e01) : (b == 0 ? p.e10 : p.e11);
  }
  return e;
}

std::vector<std::uint8_t> BinaryEnergy::Minimize(double* energy) const {
  // Label 0 = source side, 1 = sink side. A unary cost c0 for label 0 is
  // paid by cutting i->t, c1 by cutting s->i. Pair terms are reduced to
  // unary parts plus one arc i->j of weight e01 + e10 - e00 - e11.
  const int n = num_vars();
  const int source = n, sink = n + 1;
  std::vector<double> cost0(n), cost1(n);
  for (int i = 0; i < n; ++i) {
    cost0[i] = unary_[i].first;
    cost1[i] = unary_[i].second;
  }
  MaxFlow flow(n + 2);
  for (const Pair& p : pairs_) {
    // E = e00 + (e10 - e00) x_i + (e11 - e10) x_j + w (1 - x_i) x_j
    const double w = p.e01 + p.e10 - p.e00 - p.e11;
    cost0[p.i] += p.e00;
    cost1[p.i] += p.e10;
    cost1[p.j] += p.e11 - p.e10;
    if (w > 0.0) flow.AddEdge(p.i, p.j, w, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    const double d = cost1[i] - cost0[i];
    if (d > 0.0) {
      flow.AddEdge(source, i, d, 0.0);
    } else if (d < 0.0) {
      flow.AddEdge(i, sink, -d, 0.0);
    }
  }
  flow.Solve(source, sink);
  std::vector<std::uint8_t> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = flow.OnSourceSide(i) ? 0 : 1;
  if (energy) *energy = Evaluate(labels);
  return labels;
}

}  // namespace pose_forge
