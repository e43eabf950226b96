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

#include "pose_forge/fragments/fragments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pose_forge/core/error.h"
#include "pose_forge/fragments/prediction_maps.h"

namespace pose_forge {
namespace {

struct ArgMax {
  double value = -1.0;
  int index = -1;

  void Offer(double v, int i) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
};

void CheckFragment(int fragment, const FragmentAtlas& atlas) {
  if (fragment < 0 || fragment >= atlas.fragment_count()) {
    std::ostringstream msg;
    msg << "fragment " << fragment << " outside [0, " << atlas.fragment_count()
        << ")";
    throw Error(ErrorCode::kBadFragmentIndex, msg.str());
  }
}

}  // namespace

std::vector<int> FarthestPointSampling(const TriangleMesh& mesh, int n) {
  const int num_vertices = static_cast<int>(mesh.vertices.size());
  if (n < 1 || num_vertices < n) {
    std::ostringstream msg;
    msg << "cannot sample " << n << " centers from " << num_vertices
        << " vertices";
    throw Error(ErrorCode::kTooFewVertices, msg.str());
  }
  const Eigen::Vector3d centroid = mesh.VertexCentroid();
  std::vector<double> min_dist(num_vertices);
  std::vector<char> selected(num_vertices, 0);
  for (int i = 0; i < num_vertices; ++i) {
    min_dist[i] = (mesh.vertices[i] - centroid).norm();
  }

  std::vector<int> picks;
  picks.reserve(n);
  for (int k = 0; k < n; ++k) {
    ArgMax best;
#pragma omp parallel
    {
      ArgMax local;
#pragma omp for schedule(static) nowait
      for (int i = 0; i < num_vertices; ++i) {
        if (!selected[i]) local.Offer(min_dist[i], i);
      }
#pragma omp critical
      if (local.index >= 0) best.Offer(local.value, local.index);
    }
    const int pick = best.index;
    selected[pick] = 1;
    picks.push_back(pick);
    const Eigen::Vector3d& p = mesh.vertices[pick];
#pragma omp parallel for schedule(static)
    for (int i = 0; i < num_vertices; ++i) {
      min_dist[i] = std::min(min_dist[i], (mesh.vertices[i] - p).norm());
    }
  }
  return picks;
}

std::vector<int> AssignFragments(const TriangleMesh& mesh,
                                 const std::vector<Eigen::Vector3d>& centers) {
  if (centers.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one center required");
  }
  const int num_vertices = static_cast<int>(mesh.vertices.size());
  const int num_centers = static_cast<int>(centers.size());
  std::vector<int> assignment(num_vertices, 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < num_vertices; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_index = 0;
    for (int f = 0; f < num_centers; ++f) {
      const double d = (mesh.vertices[i] - centers[f]).squaredNorm();
      if (d < best) {
        best = d;
        best_index = f;
      }
    }
    assignment[i] = best_index;
  }
  return assignment;
}

std::vector<double> FragmentNormalizers(const TriangleMesh& mesh,
                                        const std::vector<int>& assignment,
                                        int fragment_count) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Eigen::Vector3d> lo(fragment_count, Eigen::Vector3d::Constant(inf));
  std::vector<Eigen::Vector3d> hi(fragment_count,
                                  Eigen::Vector3d::Constant(-inf));
  std::vector<int> count(fragment_count, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int f = assignment[i];
    lo[f] = lo[f].cwiseMin(mesh.vertices[i]);
    hi[f] = hi[f].cwiseMax(mesh.vertices[i]);
    ++count[f];
  }
  std::vector<double> normalizers(fragment_count);
  for (int f = 0; f < fragment_count; ++f) {
    if (count[f] == 0) {
      std::ostringstream msg;
      msg << "fragment " << f
          << " owns no vertex; the fragment count is too large for the mesh";
      throw Error(ErrorCode::kEmptyFragment, msg.str());
    }
    normalizers[f] =
        std::max(kMinFragmentNormalizer, (hi[f] - lo[f]).maxCoeff());
  }
  return normalizers;
}

FragmentAtlas BuildFragmentAtlas(const TriangleMesh& mesh, int n) {
  FragmentAtlas atlas;
  for (int index : FarthestPointSampling(mesh, n)) {
    atlas.centers.push_back(mesh.vertices[index]);
  }
  atlas.vertex_assignment = AssignFragments(mesh, atlas.centers);
  atlas.normalizers = FragmentNormalizers(mesh, atlas.vertex_assignment, n);
  return atlas;
}

int NearestFragment(const FragmentAtlas& atlas, const Eigen::Vector3d& x) {
  double best = std::numeric_limits<double>::infinity();
  int best_index = 0;
  for (int f = 0; f < atlas.fragment_count(); ++f) {
    const double d = (x - atlas.centers[f]).squaredNorm();
    if (d < best) {
      best = d;
      best_index = f;
    }
  }
  return best_index;
}

Eigen::Vector3d EncodeFragmentCoord(const Eigen::Vector3d& x, int fragment,
                                    const FragmentAtlas& atlas) {
  CheckFragment(fragment, atlas);
  return (x - atlas.centers[fragment]) / atlas.normalizers[fragment];
}

Eigen::Vector3d DecodeFragmentCoord(const Eigen::Vector3d& r, int fragment,
                                    const FragmentAtlas& atlas) {
  CheckFragment(fragment, atlas);
  return atlas.normalizers[fragment] * r + atlas.centers[fragment];
}

std::vector<Correspondence> SelectCorrespondences(const PredictionMaps& maps,
                                                  const FragmentAtlas& atlas,
                                                  double object_threshold,
                                                  double fragment_threshold) {
  if (!(object_threshold >= 0.0 && object_threshold < 1.0) ||
      !(fragment_threshold > 0.0 && fragment_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "thresholds must satisfy 0 <= object threshold < 1 and 0 < fragment ratio <= 1");
  }
  if (maps.fragment_count != atlas.fragment_count()) {
    std::ostringstream msg;
    msg << "prediction maps have " << maps.fragment_count
        << " fragments but the atlas has " << atlas.fragment_count();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  const int n = maps.fragment_count;
  std::vector<Correspondence> out;
  for (int gy = 0; gy < maps.grid_height(); ++gy) {
    for (int gx = 0; gx < maps.grid_width(); ++gx) {
      const std::size_t cell = maps.Cell(gx, gy);
      const double a = maps.ObjectProb(cell);
      if (!(a > object_threshold)) continue;
      double max_b = 0.0;
      for (int f = 0; f < n; ++f) {
        max_b = std::max(max_b, static_cast<double>(maps.FragmentProb(f, cell)));
      }
      if (max_b <= 0.0) continue;
      const Eigen::Vector2d pixel = maps.CellCenter(gx, gy);
      for (int f = 0; f < n; ++f) {
        const double b = maps.FragmentProb(f, cell);
        if (!(b / max_b > fragment_threshold)) continue;
        const Eigen::Vector3d r(maps.FragmentCoord(f, 0, cell),
                                maps.FragmentCoord(f, 1, cell),
                                maps.FragmentCoord(f, 2, cell));
        out.push_back({pixel, DecodeFragmentCoord(r, f, atlas), a * b});
      }
    }
  }
  return out;
}

}  // namespace pose_forge
