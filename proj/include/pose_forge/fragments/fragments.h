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

#ifndef POSE_FORGE_FRAGMENTS_FRAGMENTS_H_
#define POSE_FORGE_FRAGMENTS_FRAGMENTS_H_

#include <vector>

#include <Eigen/Core>

#include "pose_forge/core/correspondence.h"
#include "pose_forge/core/mesh.h"

namespace pose_forge {

struct PredictionMaps;

inline constexpr int kDefaultFragmentCount = 64;
inline constexpr double kMinFragmentNormalizer = 1.0;  // mm

// Surface fragments of one object model: fragment centers, per-fragment
// normalizers (longest bounding-box side, mm) and the vertex partition.
struct FragmentAtlas {
  std::vector<Eigen::Vector3d> centers;
  std::vector<double> normalizers;
  std::vector<int> vertex_assignment;

  int fragment_count() const { return static_cast<int>(centers.size()); }
};

// Greedy farthest point sampling over mesh vertices. The selection is seeded
// with the vertex centroid, which is not part of the output. Ties go to the
// lowest vertex index. Returns indices into mesh.vertices in selection order.
// Throws TooFewVertices when n < 1 or the mesh has fewer than n vertices.
std::vector<int> FarthestPointSampling(const TriangleMesh& mesh, int n);

// Index of the nearest center for every vertex (ties: lowest center index).
std::vector<int> AssignFragments(const TriangleMesh& mesh,
                                 const std::vector<Eigen::Vector3d>& centers);

// Longest side of each fragment's axis-aligned bounding box, clamped below
// at kMinFragmentNormalizer. Throws EmptyFragment if a fragment owns no
// vertex.
std::vector<double> FragmentNormalizers(const TriangleMesh& mesh,
                                        const std::vector<int>& assignment,
                                        int fragment_count);

FragmentAtlas BuildFragmentAtlas(const TriangleMesh& mesh,
                                 int n = kDefaultFragmentCount);

// Nearest fragment of an arbitrary model-space point.
int NearestFragment(const FragmentAtlas& atlas, const Eigen::Vector3d& x);

// r = (x - g_f) / h_f and its inverse x = h_f * r + g_f. Both throw
// BadFragmentIndex for f outside [0, n).
Eigen::Vector3d EncodeFragmentCoord(const Eigen::Vector3d& x, int fragment,
                                    const FragmentAtlas& atlas);
Eigen::Vector3d DecodeFragmentCoord(const Eigen::Vector3d& r, int fragment,
                                    const FragmentAtlas& atlas);

inline constexpr double kDefaultObjectThreshold = 0.1;    // min object probability
inline constexpr double kDefaultFragmentThreshold = 0.5;  // min fraction of the best fragment

// Links every grid location whose object probability exceeds
// `object_threshold` to each fragment whose probability, relative to the
// location's maximum fragment probability, exceeds `fragment_threshold`.
// Confidence is object_prob * fragment_prob. Output order: row-major grid
// locations, fragments ascending.
std::vector<Correspondence> SelectCorrespondences(
    const PredictionMaps& maps, const FragmentAtlas& atlas,
    double object_threshold = kDefaultObjectThreshold,
    double fragment_threshold = kDefaultFragmentThreshold);

}  // namespace pose_forge

#endif  // POSE_FORGE_FRAGMENTS_FRAGMENTS_H_
