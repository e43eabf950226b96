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

// OpenMP kernels against their serial references. Run with
// OMP_NUM_THREADS to vary the worker count of the parallel side.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pose_forge/core/mesh.h"
#include "pose_forge/fitting/neighborhood_graph.h"
#include "pose_forge/fragments/fragments.h"
#include "pose_forge/metrics/kd_tree.h"
#include "pose_forge/metrics/pose_error.h"
#include "pose_forge/metrics/symmetry.h"
#include "pose_forge/reference/serial_kernels.h"

namespace pose_forge {
namespace {

std::vector<Eigen::Vector3d> Cloud(int n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-60.0, 60.0);
  std::vector<Eigen::Vector3d> out(n);
  for (auto& p : out) p = {u(rng), 0.7 * u(rng), 0.4 * u(rng)};
  return out;
}

TriangleMesh CloudMesh(int n) {
  TriangleMesh mesh;
  mesh.vertices = Cloud(n);
  return mesh;
}

RigidPose Pose(double angle, double z) {
  RigidPose p;
  p.rotation = AxisAngleToRotation(Eigen::Vector3d(0.3, -0.5, 0.8).normalized() * angle);
  p.translation = {5.0, -3.0, z};
  return p;
}

void BM_Diameter(benchmark::State& state) {
  const auto pts = Cloud(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(MeshDiameter(pts));
}
void BM_DiameterSerial(benchmark::State& state) {
  const auto pts = Cloud(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::MeshDiameter(pts));
}
BENCHMARK(BM_Diameter)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiameterSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Fps(benchmark::State& state) {
  const TriangleMesh mesh = CloudMesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(FarthestPointSampling(mesh, 64));
}
void BM_FpsSerial(benchmark::State& state) {
  const TriangleMesh mesh = CloudMesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::FarthestPointSampling(mesh.vertices, 64));
}
BENCHMARK(BM_Fps)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FpsSerial)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_AssignFragments(benchmark::State& state) {
  const TriangleMesh mesh = CloudMesh(static_cast<int>(state.range(0)));
  const auto centers = Cloud(64, 11);
  for (auto _ : state) benchmark::DoNotOptimize(AssignFragments(mesh, centers));
}
void BM_AssignFragmentsSerial(benchmark::State& state) {
  const TriangleMesh mesh = CloudMesh(static_cast<int>(state.range(0)));
  const auto centers = Cloud(64, 11);
  for (auto _ : state) benchmark::DoNotOptimize(reference::AssignFragments(mesh.vertices, centers));
}
BENCHMARK(BM_AssignFragments)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssignFragmentsSerial)->Arg(100000)->Unit(benchmark::kMillisecond);

// ADI: the parallel kernel uses a k-d tree, the reference a double loop.
void BM_Adi(benchmark::State& state) {
  const auto pts = Cloud(static_cast<int>(state.range(0)));
  const KdTree tree(pts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AdiError(Pose(0.2, 900.0), Pose(0.0, 920.0), pts, tree));
  }
}
void BM_AdiSerial(benchmark::State& state) {
  const auto pts = Cloud(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::AdiError(Pose(0.2, 900.0), Pose(0.0, 920.0), pts));
  }
}
BENCHMARK(BM_Adi)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdiSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Mssd(benchmark::State& state) {
  const TriangleMesh cube = Subdivide(MakeCube(100.0), 5);
  const std::vector<RigidPose> syms = DiscoverSymmetries(MakeCube(100.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(MssdError(Pose(0.2, 900.0), Pose(0.0, 920.0), syms, cube.vertices));
  }
}
void BM_MssdSerial(benchmark::State& state) {
  const TriangleMesh cube = Subdivide(MakeCube(100.0), 5);
  const std::vector<RigidPose> syms = DiscoverSymmetries(MakeCube(100.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::MssdError(Pose(0.2, 900.0), Pose(0.0, 920.0), syms, cube.vertices));
  }
}
BENCHMARK(BM_Mssd)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MssdSerial)->Unit(benchmark::kMillisecond);

CorrespondenceSet PixelCloud(int n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 640.0), v(0.0, 480.0);
  const auto pts = Cloud(n);
  std::vector<Correspondence> c;
  for (const auto& x : pts) c.push_back({{u(rng), v(rng)}, x, 1.0});
  return CorrespondenceSet(std::move(c));
}

void BM_NeighborhoodGraph(benchmark::State& state) {
  const CorrespondenceSet set = PixelCloud(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(BuildNeighborhoodGraph(set));
}
void BM_NeighborhoodGraphSerial(benchmark::State& state) {
  const CorrespondenceSet set = PixelCloud(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::NeighborhoodEdges(set, kDefaultNeighborhoodRadius));
  }
}
BENCHMARK(BM_NeighborhoodGraph)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NeighborhoodGraphSerial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pose_forge

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
