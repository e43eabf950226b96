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

#include "pose_forge/harness/results_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

[[noreturn]] void Fail(long line, const std::string& message) {
  throw ParseError(ParseError::Unit::kLine, line, message);
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(sep, start);
    out.push_back(s.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ToDouble(const std::string& token, long line, const char* field) {
  double v = 0.0;
  const std::string t = Trim(token);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) {
    Fail(line, std::string("bad value '") + t + "' in field " + field);
  }
  return v;
}

int ToInt(const std::string& token, long line, const char* field) {
  int v = 0;
  const std::string t = Trim(token);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) {
    Fail(line, std::string("bad integer '") + t + "' in field " + field);
  }
  return v;
}

std::vector<double> Vector(const std::string& token, std::size_t count,
                           long line, const char* field) {
  std::istringstream in(token);
  std::vector<double> values;
  for (std::string w; in >> w;) values.push_back(ToDouble(w, line, field));
  if (values.size() != count) {
    std::ostringstream msg;
    msg << "field " << field << " has " << values.size() << " values, expected "
        << count;
    Fail(line, msg.str());
  }
  return values;
}

}  // namespace

void WriteResults(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << kResultsHeader << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const ResultRecord& r : records) {
    out << r.scene_id << ',' << r.image_id << ',' << r.object_id << ','
        << r.score << ',';
    for (int i = 0; i < 9; ++i) {
      out << (i ? " " : "") << r.pose.rotation(i / 3, i % 3);
    }
    out << ',';
    for (int i = 0; i < 3; ++i) out << (i ? " " : "") << r.pose.translation[i];
    out << ',' << r.time << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing results");
}

void WriteResults(const std::string& path,
                  const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  WriteResults(out, records);
}

std::vector<ResultRecord> ReadResults(std::istream& in) {
  std::vector<ResultRecord> records;
  std::string text;
  long line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string trimmed = Trim(text);
    if (trimmed.empty()) continue;
    if (line == 1 && trimmed.rfind("scene_id", 0) == 0) continue;
    const std::vector<std::string> f = Split(trimmed, ',');
    if (f.size() != 7) {
      std::ostringstream msg;
      msg << "expected 7 comma-separated fields, found " << f.size();
      Fail(line, msg.str());
    }
    ResultRecord r;
    r.scene_id = ToInt(f[0], line, "scene_id");
    r.image_id = ToInt(f[1], line, "im_id");
    r.object_id = ToInt(f[2], line, "obj_id");
    r.score = ToDouble(f[3], line, "score");
    if (!std::isfinite(r.score)) Fail(line, "score must be finite");
    const std::vector<double> rot = Vector(f[4], 9, line, "R");
    const std::vector<double> t = Vector(f[5], 3, line, "t");
    r.time = ToDouble(f[6], line, "time");
    if (!(r.time >= 0.0)) Fail(line, "time must be >= 0");
    Eigen::Matrix3d m;
    m << rot[0], rot[1], rot[2], rot[3], rot[4], rot[5], rot[6], rot[7], rot[8];
    r.pose.rotation = m;
    r.pose.translation = Eigen::Vector3d(t[0], t[1], t[2]);
    if (!r.pose.translation.allFinite() || !r.pose.IsValid(1e-3)) {
      Fail(line, "R is not a rotation matrix");
    }
    records.push_back(r);
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "failed reading results");
  return records;
}

std::vector<ResultRecord> ReadResults(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadResults(in);
}

void SortResults(std::vector<ResultRecord>* records) {
  std::stable_sort(records->begin(), records->end(),
                   [](const ResultRecord& a, const ResultRecord& b) {
                     if (a.scene_id != b.scene_id) return a.scene_id < b.scene_id;
                     if (a.image_id != b.image_id) return a.image_id < b.image_id;
                     if (a.object_id != b.object_id) return a.object_id < b.object_id;
                     return a.score > b.score;
                   });
}

}  // namespace pose_forge
