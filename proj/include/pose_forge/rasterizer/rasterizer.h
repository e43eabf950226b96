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

#ifndef POSE_FORGE_RASTERIZER_RASTERIZER_H_
#define POSE_FORGE_RASTERIZER_RASTERIZER_H_

#include <Eigen/Core>

#include "pose_forge/core/camera.h"
#include "pose_forge/core/image.h"
#include "pose_forge/core/mesh.h"

namespace pose_forge {

// Everything the z-buffer pass produces. Pixels without surface hold
// distance = depth = 0 and triangle = -1.
struct RenderBuffers {
  DistanceMap distance;
  DepthMap depth;
  Image<int> triangle;
  // Model-space surface point seen at each covered pixel.
  Image<Eigen::Vector3d> model_point;
};

// Z-buffered software rasterization.
//
// A pixel is covered by a triangle iff the pixel center lies inside the
// projected triangle; centers exactly on an edge follow the top-left rule so
// that an edge shared by two triangles covers each center once. The stored
// value is the exact ray/plane intersection, so it matches a ray caster up to
// rounding. Both windings are drawn (no back-face culling) and triangles with
// a vertex at Z <= 0 are skipped. Single-threaded and deterministic.
RenderBuffers Rasterize(const TriangleMesh& mesh, const RigidPose& pose,
                        const CameraIntrinsics& camera);

DistanceMap RenderDistanceMap(const TriangleMesh& mesh, const RigidPose& pose,
                              const CameraIntrinsics& camera);

DepthMap RenderDepthMap(const TriangleMesh& mesh, const RigidPose& pose,
                        const CameraIntrinsics& camera);

}  // namespace pose_forge

#endif  // POSE_FORGE_RASTERIZER_RASTERIZER_H_
