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

#ifndef POSE_FORGE_HARNESS_COMMANDS_H_
#define POSE_FORGE_HARNESS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pose_forge/fitting/progressive_x.h"
#include "pose_forge/harness/results_io.h"

namespace pose_forge {

inline constexpr char kPredictionMapsExtension[] = ".maps";
inline constexpr char kJobsEnvironmentVariable[] = "POSE_FORGE_JOBS";

// Worker count: `requested` if positive, else POSE_FORGE_JOBS if set and
// positive, else 0 (runtime default).
int ResolveJobs(int requested);

struct FitOptions {
  std::string dataset;
  // Prediction-map files, or directories scanned (non-recursively) for
  // files ending in kPredictionMapsExtension.
  std::vector<std::string> inputs;
  MultiFittingParams params;
  bool record_time = false;  // otherwise time is written as 0
  int jobs = 0;
};

// One work item per prediction-map file. The seed of an item depends only
// on params.fitting.seed and its (scene, image, object) ids, so output
// does not depend on scheduling. Results come back canonically sorted.
std::vector<ResultRecord> RunFit(const FitOptions& options);

struct EvalDataset {
  std::string dataset;
  std::string results;
};

struct EvalOptions {
  std::vector<EvalDataset> datasets;
  std::string symmetries;  // optional override for every dataset
  double visibility_cutoff = 0.1;
  bool siso = false;
  int jobs = 0;
};

struct DatasetReport {
  std::string name;
  int images = 0;
  int instances = 0;
  long eligible = 0;
  int estimates = 0;
  double ar_vsd = 0.0;
  double ar_mssd = 0.0;
  double ar_mspd = 0.0;
  double ar = 0.0;
  std::optional<double> siso_vsd_recall;
};

struct EvalReport {
  std::vector<DatasetReport> datasets;
  double ar_core = 0.0;  // mean of the per-dataset AR
};

EvalReport RunEval(const EvalOptions& options);
std::string FormatReportTable(const EvalReport& report);
std::string FormatReportJson(const EvalReport& report);

// Full command-line entry point. Exit status: 0 success, 1 I/O failure,
// 2 usage, parse or validation failure.
int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pose_forge

#endif  // POSE_FORGE_HARNESS_COMMANDS_H_
