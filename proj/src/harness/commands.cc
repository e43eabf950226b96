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

#include "pose_forge/harness/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pose_forge/core/error.h"
#include "pose_forge/fitting/correspondence_set.h"
#include "pose_forge/fragments/fragments.h"
#include "pose_forge/fragments/prediction_maps.h"
#include "pose_forge/harness/ply.h"
#include "pose_forge/harness/scene_io.h"
#include "pose_forge/harness/symmetry_io.h"
#include "pose_forge/metrics/pose_error.h"
#include "pose_forge/metrics/recall.h"
#include "pose_forge/metrics/symmetry.h"
#include "pose_forge/metrics/vsd.h"
#include "pose_forge/rasterizer/depth_image_io.h"
#include "pose_forge/rasterizer/rasterizer.h"
#include "pose_forge/rasterizer/visibility.h"

namespace pose_forge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t ItemSeed(std::uint64_t seed, int scene, int image, int object) {
  std::uint64_t h = SplitMix64(seed);
  for (int v : {scene, image, object}) {
    h = SplitMix64(h ^ static_cast<std::uint32_t>(v));
  }
  return h;
}

// Runs body(i) for i in [0, n) on the worker pool; the exception of the
// lowest failing index is rethrown so failures are reproducible.
template <typename Fn>
void ParallelFor(int n, int jobs, Fn body) {
  std::vector<std::exception_ptr> errors(n);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::string> CollectMapFiles(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& input : inputs) {
    std::error_code ec;
    if (fs::is_directory(input, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() &&
            entry.path().extension() == kPredictionMapsExtension) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(input, ec)) {
      files.push_back(input);
    } else {
      throw Error(ErrorCode::kIoError, "no such file or directory: " + input);
    }
  }
  return files;
}

const SceneRecord& FindImage(const std::vector<SceneRecord>& records,
                             int image_id, const std::string& where) {
  for (const SceneRecord& r : records) {
    if (r.image_id == image_id) return r;
  }
  throw Error(ErrorCode::kValidationError,
              where + ": image " + std::to_string(image_id) + " not found");
}

}  // namespace

int ResolveJobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kJobsEnvironmentVariable)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 0;
}

std::vector<ResultRecord> RunFit(const FitOptions& options) {
  options.params.Validate();
  const std::vector<std::string> files = CollectMapFiles(options.inputs);

  std::vector<PredictionMaps> maps;
  maps.reserve(files.size());
  for (const std::string& f : files) maps.push_back(ReadPredictionMaps(f));

  std::map<int, std::vector<SceneRecord>> cameras;
  std::map<std::pair<int, int>, FragmentAtlas> atlases;
  for (const PredictionMaps& m : maps) {
    if (!cameras.count(m.scene_id)) {
      const std::string path = SceneDir(options.dataset, m.scene_id) + "/scene_camera.json";
      cameras[m.scene_id] = ParseSceneCameras(ReadTextFile(path), m.scene_id);
    }
    const auto key = std::make_pair(m.object_id, m.fragment_count);
    if (!atlases.count(key)) {
      const TriangleMesh mesh = ReadPly(ModelPath(options.dataset, m.object_id));
      atlases[key] = BuildFragmentAtlas(mesh, m.fragment_count);
    }
  }

  std::vector<std::vector<ResultRecord>> per_item(maps.size());
  ParallelFor(static_cast<int>(maps.size()), ResolveJobs(options.jobs), [&](int i) {
    const auto start = std::chrono::steady_clock::now();
    const PredictionMaps& m = maps[i];
    const CameraIntrinsics& camera =
        FindImage(cameras.at(m.scene_id), m.image_id, files[i]).camera;
    if (camera.width != m.width || camera.height != m.height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  files[i] + ": map size differs from the camera image size");
    }
    const FragmentAtlas& atlas = atlases.at({m.object_id, m.fragment_count});
    std::vector<Correspondence> corrs = SelectCorrespondences(m, atlas);
    if (corrs.size() < 3) return;
    const CorrespondenceSet set(std::move(corrs));

    MultiFittingParams params = options.params;
    params.fitting.seed =
        ItemSeed(options.params.fitting.seed, m.scene_id, m.image_id, m.object_id);
    std::vector<PoseHypothesis> hypotheses;
    try {
      hypotheses = ProgressiveX(set, camera, params);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoHypothesis && e.code() != ErrorCode::kTooFewPoints) {
        throw;
      }
    }
    const double seconds =
        options.record_time
            ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            : 0.0;
    for (const PoseHypothesis& h : hypotheses) {
      ResultRecord r;
      r.scene_id = m.scene_id;
      r.image_id = m.image_id;
      r.object_id = m.object_id;
      r.score = h.quality;
      r.pose = h.pose;
      r.time = seconds;
      per_item[i].push_back(r);
    }
  });

  std::vector<ResultRecord> results;
  for (auto& item : per_item) results.insert(results.end(), item.begin(), item.end());
  SortResults(&results);
  return results;
}

namespace {

struct ObjectModel {
  TriangleMesh mesh;
  double diameter = 0.0;
  std::vector<RigidPose> symmetries;
};

struct ImageCounts {
  std::vector<RecallCounts> vsd;   // tolerance-major: [tau][theta]
  std::vector<RecallCounts> mssd;
  std::vector<RecallCounts> mspd;
  RecallCounts siso;
};

std::map<int, ObjectModel> LoadModels(const std::string& dataset,
                                      const std::set<int>& ids,
                                      const std::string& symmetry_override) {
  std::map<int, SymmetryAnnotation> table;
  bool have_table = false;
  if (!symmetry_override.empty()) {
    table = LoadSymmetries(symmetry_override);
    have_table = true;
  } else if (fs::exists(dataset + "/models/symmetries.json")) {
    table = LoadSymmetries(dataset + "/models/symmetries.json");
    have_table = true;
  }

  std::map<int, ObjectModel> models;
  for (int id : ids) {
    ObjectModel& m = models[id];
    m.mesh = ReadPly(ModelPath(dataset, id));
    if (m.mesh.vertices.empty()) {
      throw Error(ErrorCode::kEmptyModel, "model " + std::to_string(id) + " has no vertices");
    }
    m.diameter = MeshDiameter(m.mesh);
  }
  // Discovery is expensive; only objects without an annotation pay for it.
  std::vector<int> pending;
  for (auto& [id, m] : models) {
    const auto it = table.find(id);
    if (have_table && it != table.end()) {
      m.symmetries = ExpandSymmetries(it->second);
    } else {
      pending.push_back(id);
    }
  }
  for (int id : pending) models[id].symmetries = DiscoverSymmetries(models[id].mesh);
  return models;
}

DistanceMap SceneDistance(const std::string& dataset, const SceneRecord& record,
                          const std::vector<DistanceMap>& gt_maps) {
  const std::string depth_path = DepthPath(dataset, record.scene_id, record.image_id);
  if (fs::exists(depth_path)) {
    const DepthMap depth = ReadScaledPng16(depth_path, record.depth_scale);
    return DepthToDistance(depth, record.camera);
  }
  // No depth image: the scene is the z-buffered union of the annotated
  // instances.
  DistanceMap scene(record.camera.width, record.camera.height, 0.0);
  for (const DistanceMap& m : gt_maps) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0.0 && (scene[i] == 0.0 || m[i] < scene[i])) scene[i] = m[i];
    }
  }
  return scene;
}

ImageCounts EvaluateImage(const std::string& dataset, const SceneRecord& record,
                          const std::vector<PoseEstimate>& estimates,
                          const std::map<int, ObjectModel>& models,
                          const EvalOptions& options) {
  const CameraIntrinsics& camera = record.camera;
  std::vector<GroundTruthInstance> gts = record.instances;
  const int ne = static_cast<int>(estimates.size());
  const int ng = static_cast<int>(gts.size());

  std::vector<DistanceMap> gt_maps(ng);
  for (int g = 0; g < ng; ++g) {
    gt_maps[g] = RenderDistanceMap(models.at(gts[g].object_id).mesh, gts[g].pose, camera);
  }
  const DistanceMap scene = SceneDistance(dataset, record, gt_maps);
  if (!scene.SameSize(gt_maps.empty() ? scene : gt_maps[0])) {
    throw Error(ErrorCode::kDimensionMismatch, "depth image size differs from camera size");
  }
  if (fs::exists(DepthPath(dataset, record.scene_id, record.image_id))) {
    for (int g = 0; g < ng; ++g) {
      const PixelMask visible =
          ComputeVisibilityMasks(gt_maps[g], gt_maps[g], scene).ground_truth;
      gts[g].visible_fraction =
          CountNonZero(visible) == 0 ? 0.0 : VisibleFraction(visible, gt_maps[g]);
    }
  }

  const std::vector<double> tau_fractions = VsdToleranceFractions();
  const std::vector<double> vsd_thresholds = VsdThresholds();
  const std::vector<double> mssd_fractions = MssdThresholdFractions();
  const std::vector<double> mspd_thresholds = MspdThresholds(camera.width);
  const int nt = static_cast<int>(tau_fractions.size());
  const int siso_slot = options.siso ? nt : -1;
  const int slots = nt + (options.siso ? 1 : 0);

  auto blank = [&] {
    return std::vector<std::vector<double>>(ne, std::vector<double>(ng, kInf));
  };
  std::vector<std::vector<std::vector<double>>> vsd(slots, blank());
  auto mssd = blank();
  auto mspd = blank();

  for (int e = 0; e < ne; ++e) {
    const auto it = models.find(estimates[e].object_id);
    if (it == models.end()) continue;  // object absent from this image
    const ObjectModel& model = it->second;
    const DistanceMap est_map = RenderDistanceMap(model.mesh, estimates[e].pose, camera);
    std::vector<double> taus;
    for (double f : tau_fractions) taus.push_back(f * model.diameter);
    if (options.siso) taus.push_back(kDefaultVsdTau);
    for (int g = 0; g < ng; ++g) {
      if (gts[g].object_id != estimates[e].object_id) continue;
      const std::vector<double> v = VsdErrors(est_map, gt_maps[g], scene, taus);
      for (int k = 0; k < slots; ++k) vsd[k][e][g] = v[k];
      mssd[e][g] = MssdError(estimates[e].pose, gts[g].pose, model.symmetries,
                             model.mesh.vertices) / model.diameter;
      mspd[e][g] = MspdError(estimates[e].pose, gts[g].pose, model.symmetries,
                             model.mesh.vertices, camera);
    }
  }

  const double cutoff = options.visibility_cutoff;
  ImageCounts counts;
  counts.vsd.resize(nt * vsd_thresholds.size());
  for (int k = 0; k < nt; ++k) {
    const std::vector<int> match = GreedyMatch(estimates, gts, vsd[k], cutoff);
    for (std::size_t j = 0; j < vsd_thresholds.size(); ++j) {
      counts.vsd[k * vsd_thresholds.size() + j] =
          CountCorrect(gts, vsd[k], match, vsd_thresholds[j], cutoff);
    }
  }
  if (siso_slot >= 0) {
    const std::vector<int> match = GreedyMatch(estimates, gts, vsd[siso_slot], cutoff);
    counts.siso = CountCorrect(gts, vsd[siso_slot], match, kSisoVsdThreshold, cutoff);
  }
  const std::vector<int> mssd_match = GreedyMatch(estimates, gts, mssd, cutoff);
  for (double f : mssd_fractions) {
    counts.mssd.push_back(CountCorrect(gts, mssd, mssd_match, f, cutoff));
  }
  const std::vector<int> mspd_match = GreedyMatch(estimates, gts, mspd, cutoff);
  for (double t : mspd_thresholds) {
    counts.mspd.push_back(CountCorrect(gts, mspd, mspd_match, t, cutoff));
  }
  return counts;
}

double AverageOf(const std::vector<RecallCounts>& counts) {
  std::vector<double> recalls;
  for (const RecallCounts& c : counts) recalls.push_back(c.recall());
  return Mean(recalls);
}

void Accumulate(std::vector<RecallCounts>* total, const std::vector<RecallCounts>& part) {
  if (total->empty()) total->resize(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) (*total)[i] += part[i];
}

std::vector<SceneRecord> LoadDataset(const std::string& dataset) {
  const fs::path test_dir = fs::path(dataset) / "test";
  if (!fs::is_directory(test_dir)) {
    throw Error(ErrorCode::kIoError, "missing directory " + test_dir.string());
  }
  std::vector<int> scene_ids;
  for (const auto& entry : fs::directory_iterator(test_dir)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() || !std::all_of(name.begin(), name.end(), ::isdigit)) continue;
    scene_ids.push_back(std::stoi(name));
  }
  std::sort(scene_ids.begin(), scene_ids.end());
  std::vector<SceneRecord> records;
  for (int id : scene_ids) {
    const std::string dir = SceneDir(dataset, id);
    std::vector<SceneRecord> scene =
        LoadScene(dir + "/scene_gt.json", dir + "/scene_camera.json", id);
    records.insert(records.end(), scene.begin(), scene.end());
  }
  return records;
}

DatasetReport EvaluateDataset(const EvalDataset& input, const EvalOptions& options) {
  const std::vector<SceneRecord> records = LoadDataset(input.dataset);
  const std::vector<ResultRecord> results = ReadResults(input.results);

  std::set<int> object_ids;
  for (const SceneRecord& r : records) {
    for (const auto& g : r.instances) object_ids.insert(g.object_id);
  }
  const int jobs = ResolveJobs(options.jobs);
  const std::map<int, ObjectModel> models =
      LoadModels(input.dataset, object_ids, options.symmetries);

  std::map<std::pair<int, int>, std::vector<PoseEstimate>> by_image;
  for (const ResultRecord& r : results) {
    by_image[{r.scene_id, r.image_id}].push_back({r.object_id, r.pose, r.score});
  }

  const int n = static_cast<int>(records.size());
  std::vector<ImageCounts> per_image(n);
  ParallelFor(n, jobs, [&](int i) {
    const auto it = by_image.find({records[i].scene_id, records[i].image_id});
    const std::vector<PoseEstimate> none;
    per_image[i] = EvaluateImage(input.dataset, records[i],
                                 it == by_image.end() ? none : it->second, models, options);
  });

  DatasetReport report;
  report.name = fs::path(input.dataset).lexically_normal().filename().string();
  if (report.name.empty()) {
    report.name = fs::path(input.dataset).lexically_normal().parent_path().filename().string();
  }
  report.images = n;
  report.estimates = static_cast<int>(results.size());
  std::vector<RecallCounts> vsd, mssd, mspd;
  RecallCounts siso;
  for (int i = 0; i < n; ++i) {
    report.instances += static_cast<int>(records[i].instances.size());
    Accumulate(&vsd, per_image[i].vsd);
    Accumulate(&mssd, per_image[i].mssd);
    Accumulate(&mspd, per_image[i].mspd);
    siso += per_image[i].siso;
  }
  report.eligible = mssd.empty() ? 0 : mssd[0].eligible;
  report.ar_vsd = vsd.empty() ? 0.0 : AverageOf(vsd);
  report.ar_mssd = mssd.empty() ? 0.0 : AverageOf(mssd);
  report.ar_mspd = mspd.empty() ? 0.0 : AverageOf(mspd);
  report.ar = AverageRecall{report.ar_vsd, report.ar_mssd, report.ar_mspd}.Combined();
  if (options.siso) report.siso_vsd_recall = siso.recall();
  return report;
}

}  // namespace

EvalReport RunEval(const EvalOptions& options) {
  if (options.datasets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "eval needs at least one dataset");
  }
  if (!(options.visibility_cutoff >= 0.0 && options.visibility_cutoff <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "visibility cutoff must be in [0, 1]");
  }
  EvalReport report;
  std::vector<double> ars;
  for (const EvalDataset& d : options.datasets) {
    report.datasets.push_back(EvaluateDataset(d, options));
    ars.push_back(report.datasets.back().ar);
  }
  report.ar_core = Mean(ars);
  return report;
}

std::string FormatReportTable(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << std::left << std::setw(16) << "dataset" << std::right << std::setw(9) << "AR_VSD"
      << std::setw(9) << "AR_MSSD" << std::setw(9) << "AR_MSPD" << std::setw(9) << "AR"
      << '\n';
  for (const DatasetReport& d : report.datasets) {
    out << std::left << std::setw(16) << d.name << std::right << std::setw(9) << d.ar_vsd
        << std::setw(9) << d.ar_mssd << std::setw(9) << d.ar_mspd << std::setw(9) << d.ar
        << '\n';
  }
  out << "AR_Core " << report.ar_core << '\n';
  for (const DatasetReport& d : report.datasets) {
    if (d.siso_vsd_recall) {
      out << "VSD recall (tau=20 mm, theta=0.3) " << d.name << ' ' << *d.siso_vsd_recall
          << '\n';
    }
  }
  return out.str();
}

std::string FormatReportJson(const EvalReport& report) {
  json doc;
  json list = json::array();
  for (const DatasetReport& d : report.datasets) {
    json entry = {{"name", d.name},
                  {"images", d.images},
                  {"instances", d.instances},
                  {"eligible_instances", d.eligible},
                  {"estimates", d.estimates},
                  {"ar_vsd", d.ar_vsd},
                  {"ar_mssd", d.ar_mssd},
                  {"ar_mspd", d.ar_mspd},
                  {"ar", d.ar}};
    if (d.siso_vsd_recall) entry["siso_vsd_recall"] = *d.siso_vsd_recall;
    list.push_back(entry);
  }
  doc["datasets"] = list;
  doc["ar_core"] = report.ar_core;
  return doc.dump(2) + "\n";
}

namespace {

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

RigidPose PoseFromValues(const std::vector<double>& r, const std::vector<double>& t) {
  Eigen::Matrix3d rotation;
  rotation << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
  RigidPose pose = MakeRigidPose(rotation, Eigen::Vector3d(t[0], t[1], t[2]),
                                 kInputRotationTolerance);
  pose.rotation = ProjectToRotation(pose.rotation);
  return pose;
}

CameraIntrinsics CameraFromValues(const std::vector<double>& v) {
  CameraIntrinsics c;
  c.fx = v[0];
  c.fy = v[1];
  c.cx = v[2];
  c.cy = v[3];
  c.width = static_cast<int>(v[4]);
  c.height = static_cast<int>(v[5]);
  if (c.width != v[4] || c.height != v[5]) {
    throw Error(ErrorCode::kValidationError, "camera width and height must be integers");
  }
  c.Validate();
  return c;
}

int ExitCodeFor(const Error& e) { return e.code() == ErrorCode::kIoError ? 1 : 2; }

}  // namespace

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"pose_forge: pose fitting from dense correspondences and BOP-style scoring"};
  app.require_subcommand(1);

  // fit
  FitOptions fit;
  std::string fit_out;
  std::uint64_t fit_seed = 0;
  auto* fit_cmd = app.add_subcommand("fit", "Fit poses to prediction maps");
  fit_cmd->add_option("--dataset", fit.dataset, "Dataset root (models/, test/)")->required();
  fit_cmd->add_option("maps", fit.inputs, "Prediction-map files or directories")->required();
  fit_cmd->add_option("--out", fit_out, "Results CSV")->required();
  fit_cmd->add_option("--seed", fit_seed, "Random seed");
  fit_cmd->add_option("--jobs", fit.jobs, "Worker count (default: POSE_FORGE_JOBS)");
  fit_cmd->add_option("--max-instances", fit.params.max_instances,
                      "Instances per object and image (0 = unlimited)");
  fit_cmd->add_option("--inlier-threshold", fit.params.fitting.inlier_threshold,
                      "Reprojection inlier threshold, px");
  fit_cmd->add_option("--iterations", fit.params.fitting.max_iterations,
                      "Sampling iterations per proposal");
  fit_cmd->add_flag("--time", fit.record_time, "Record wall time per item");

  // eval
  EvalOptions eval;
  std::vector<std::string> eval_datasets, eval_results;
  std::string eval_report;
  auto* eval_cmd = app.add_subcommand("eval", "Score results against ground truth");
  eval_cmd->add_option("--dataset", eval_datasets, "Dataset root (repeatable)")->required();
  eval_cmd->add_option("--results", eval_results, "Results CSV, one per dataset")->required();
  eval_cmd->add_option("--report", eval_report, "Write the JSON report here");
  eval_cmd->add_option("--symmetries", eval.symmetries, "Symmetry annotation override");
  eval_cmd->add_option("--visib-cutoff", eval.visibility_cutoff,
                       "Minimum visible fraction of an annotated instance");
  eval_cmd->add_flag("--siso", eval.siso, "Also report VSD recall at tau=20 mm, theta=0.3");
  eval_cmd->add_option("--jobs", eval.jobs, "Worker count (default: POSE_FORGE_JOBS)");

  // sym
  std::string sym_model, sym_out;
  int sym_object = 1;
  SymmetryOptions sym_options;
  auto* sym_cmd = app.add_subcommand("sym", "Discover global symmetries of a model");
  sym_cmd->add_option("--model", sym_model, "PLY model")->required();
  sym_cmd->add_option("--obj-id", sym_object, "Object id used as annotation key");
  sym_cmd->add_option("--out", sym_out, "Annotation file (default: stdout)");
  sym_cmd->add_option("--tolerance", sym_options.tolerance,
                      "Hausdorff tolerance, mm (default: max(15, 0.1 d))");

  // render
  std::string render_model, render_out;
  std::vector<double> render_rotation, render_translation, render_camera;
  double render_scale = 1.0;
  bool render_depth = false;
  auto* render_cmd = app.add_subcommand("render", "Render a distance map to a 16-bit PNG");
  render_cmd->add_option("--model", render_model, "PLY model")->required();
  render_cmd->add_option("--rotation", render_rotation, "9 values, row-major")
      ->required()
      ->expected(9);
  render_cmd->add_option("--translation", render_translation, "3 values, mm")
      ->required()
      ->expected(3);
  render_cmd->add_option("--camera", render_camera, "fx fy cx cy width height")
      ->required()
      ->expected(6);
  render_cmd->add_option("--scale", render_scale, "mm per stored unit");
  render_cmd->add_flag("--depth", render_depth, "Write Z-depth instead of distance");
  render_cmd->add_option("--out", render_out, "Output PNG")->required();

  // fps
  std::string fps_model, fps_out;
  int fps_count = kDefaultFragmentCount;
  auto* fps_cmd = app.add_subcommand("fps", "Dump the surface fragment atlas of a model");
  fps_cmd->add_option("--model", fps_model, "PLY model")->required();
  fps_cmd->add_option("-n,--fragments", fps_count, "Fragment count");
  fps_cmd->add_option("--out", fps_out, "JSON output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    // --jobs also caps the kernels that run outside the work-item pool.
    const int jobs = ResolveJobs(*fit_cmd ? fit.jobs : eval.jobs);
    if (jobs > 0) omp_set_num_threads(jobs);
    if (*fit_cmd) {
      fit.params.fitting.seed = fit_seed;
      const std::vector<ResultRecord> results = RunFit(fit);
      WriteResults(fit_out, results);
      out << results.size() << " poses written to " << fit_out << '\n';
    } else if (*eval_cmd) {
      if (eval_datasets.size() != eval_results.size()) {
        err << "eval: pass one --results per --dataset\n";
        return 2;
      }
      for (std::size_t i = 0; i < eval_datasets.size(); ++i) {
        eval.datasets.push_back({eval_datasets[i], eval_results[i]});
      }
      const EvalReport report = RunEval(eval);
      out << FormatReportTable(report);
      if (!eval_report.empty()) WriteText(eval_report, FormatReportJson(report));
    } else if (*sym_cmd) {
      const TriangleMesh mesh = ReadPly(sym_model);
      std::vector<RigidPose> found = DiscoverSymmetries(mesh, sym_options);
      std::map<int, SymmetryAnnotation> table;
      table[sym_object].discrete = found;
      const std::string text = FormatSymmetries(table);
      if (sym_out.empty()) {
        out << text;
      } else {
        WriteText(sym_out, text);
      }
      err << found.size() << " transforms\n";
    } else if (*render_cmd) {
      const TriangleMesh mesh = ReadPly(render_model);
      const RigidPose pose = PoseFromValues(render_rotation, render_translation);
      const CameraIntrinsics camera = CameraFromValues(render_camera);
      if (!(render_scale > 0.0)) {
        throw Error(ErrorCode::kValidationError, "--scale must be > 0");
      }
      const Image<double> map = render_depth ? RenderDepthMap(mesh, pose, camera)
                                             : RenderDistanceMap(mesh, pose, camera);
      WriteScaledPng16(render_out, map, render_scale);
    } else if (*fps_cmd) {
      const TriangleMesh mesh = ReadPly(fps_model);
      const FragmentAtlas atlas = BuildFragmentAtlas(mesh, fps_count);
      json doc;
      doc["fragments"] = atlas.fragment_count();
      json frags = json::array();
      std::vector<int> sizes(atlas.fragment_count(), 0);
      for (int a : atlas.vertex_assignment) ++sizes[a];
      for (int f = 0; f < atlas.fragment_count(); ++f) {
        const Eigen::Vector3d& c = atlas.centers[f];
        frags.push_back({{"center", {c.x(), c.y(), c.z()}},
                         {"normalizer", atlas.normalizers[f]},
                         {"vertices", sizes[f]}});
      }
      doc["atlas"] = frags;
      const std::string text = doc.dump(2) + "\n";
      if (fps_out.empty()) {
        out << text;
      } else {
        WriteText(fps_out, text);
      }
    }
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const fs::filesystem_error& e) {
    err << "error (IoError): " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace pose_forge
