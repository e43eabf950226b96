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

#include "pose_forge/harness/ply.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "pose_forge/core/error.h"

namespace pose_forge {
namespace {

enum class ScalarType { kInt8, kUint8, kInt16, kUint16, kInt32, kUint32,
                        kFloat32, kFloat64 };

struct Property {
  std::string name;
  bool is_list = false;
  ScalarType count_type = ScalarType::kUint8;
  ScalarType value_type = ScalarType::kFloat32;
};

struct Element {
  std::string name;
  long long count = 0;
  std::vector<Property> properties;
};

[[noreturn]] void Fail(std::size_t offset, const std::string& message) {
  throw ParseError(ParseError::Unit::kByteOffset,
                   static_cast<std::int64_t>(offset), message);
}

ScalarType ParseType(const std::string& name, std::size_t offset) {
  if (name == "char" || name == "int8") return ScalarType::kInt8;
  if (name == "uchar" || name == "uint8") return ScalarType::kUint8;
  if (name == "short" || name == "int16") return ScalarType::kInt16;
  if (name == "ushort" || name == "uint16") return ScalarType::kUint16;
  if (name == "int" || name == "int32") return ScalarType::kInt32;
  if (name == "uint" || name == "uint32") return ScalarType::kUint32;
  if (name == "float" || name == "float32") return ScalarType::kFloat32;
  if (name == "double" || name == "float64") return ScalarType::kFloat64;
  std::ostringstream msg;
  msg << "unsupported PLY property type '" << name << "' (at byte " << offset
      << ")";
  throw Error(ErrorCode::kUnsupportedElement, msg.str());
}

std::size_t TypeSize(ScalarType t) {
  switch (t) {
    case ScalarType::kInt8:
    case ScalarType::kUint8: return 1;
    case ScalarType::kInt16:
    case ScalarType::kUint16: return 2;
    case ScalarType::kInt32:
    case ScalarType::kUint32:
    case ScalarType::kFloat32: return 4;
    case ScalarType::kFloat64: return 8;
  }
  return 0;
}

bool IsIntegral(ScalarType t) {
  return t != ScalarType::kFloat32 && t != ScalarType::kFloat64;
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::size_t pos() const { return pos_; }

  // One header line without its terminator.
  std::string_view Line() {
    const std::size_t start = pos_;
    const std::size_t end = data_.find('\n', pos_);
    if (end == std::string_view::npos) Fail(start, "unterminated PLY header");
    pos_ = end + 1;
    std::string_view line = data_.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }

  double AsciiValue(ScalarType type, std::size_t* token_start) {
    while (pos_ < data_.size() && std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      ++pos_;
    }
    *token_start = pos_;
    if (pos_ >= data_.size()) Fail(pos_, "unexpected end of PLY data");
    std::size_t end = pos_;
    while (end < data_.size() && !std::isspace(static_cast<unsigned char>(data_[end]))) {
      ++end;
    }
    const char* first = data_.data() + pos_;
    const char* last = data_.data() + end;
    double value = 0.0;
    std::from_chars_result r;
    if (IsIntegral(type)) {
      long long v = 0;
      r = std::from_chars(first, last, v);
      value = static_cast<double>(v);
    } else {
      r = std::from_chars(first, last, value);
    }
    if (r.ec != std::errc() || r.ptr != last) {
      Fail(pos_, "malformed number '" + std::string(first, last) + "'");
    }
    pos_ = end;
    return value;
  }

  double BinaryValue(ScalarType type) {
    const std::size_t size = TypeSize(type);
    if (pos_ + size > data_.size()) Fail(pos_, "unexpected end of PLY data");
    const char* p = data_.data() + pos_;
    pos_ += size;
    switch (type) {
      case ScalarType::kInt8: return Load<std::int8_t>(p);
      case ScalarType::kUint8: return Load<std::uint8_t>(p);
      case ScalarType::kInt16: return Load<std::int16_t>(p);
      case ScalarType::kUint16: return Load<std::uint16_t>(p);
      case ScalarType::kInt32: return Load<std::int32_t>(p);
      case ScalarType::kUint32: return Load<std::uint32_t>(p);
      case ScalarType::kFloat32: return Load<float>(p);
      case ScalarType::kFloat64: return Load<double>(p);
    }
    return 0.0;
  }

 private:
  // Little-endian host assumed (checked at compile time below).
  template <typename T>
  static double Load(const char* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return static_cast<double>(v);
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

static_assert(std::endian::native == std::endian::little,
              "binary PLY support assumes a little-endian host");

std::vector<std::string> Words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

}  // namespace

TriangleMesh ParsePly(std::string_view data) {
  Reader reader(data);
  if (reader.Line() != "ply") Fail(0, "missing 'ply' magic");

  bool binary = false;
  bool have_format = false;
  std::vector<Element> elements;
  while (true) {
    const std::size_t line_start = reader.pos();
    const std::vector<std::string> w = Words(reader.Line());
    if (w.empty()) continue;
    const std::string& key = w[0];
    if (key == "end_header") break;
    if (key == "comment" || key == "obj_info") continue;
    if (key == "format") {
      if (w.size() < 2) Fail(line_start, "malformed format line");
      if (w[1] == "ascii") {
        binary = false;
      } else if (w[1] == "binary_little_endian") {
        binary = true;
      } else if (w[1] == "binary_big_endian") {
        throw Error(ErrorCode::kUnsupportedElement,
                    "big-endian PLY is not supported");
      } else {
        Fail(line_start, "unknown PLY format '" + w[1] + "'");
      }
      have_format = true;
    } else if (key == "element") {
      if (w.size() != 3) Fail(line_start, "malformed element line");
      Element e;
      e.name = w[1];
      const auto r = std::from_chars(w[2].data(), w[2].data() + w[2].size(), e.count);
      if (r.ec != std::errc() || e.count < 0) Fail(line_start, "bad element count");
      elements.push_back(e);
    } else if (key == "property") {
      if (elements.empty()) Fail(line_start, "property before any element");
      Property p;
      if (w.size() == 5 && w[1] == "list") {
        p.is_list = true;
        p.count_type = ParseType(w[2], line_start);
        p.value_type = ParseType(w[3], line_start);
        p.name = w[4];
        if (!IsIntegral(p.count_type)) Fail(line_start, "list count must be integral");
      } else if (w.size() == 3) {
        p.value_type = ParseType(w[1], line_start);
        p.name = w[2];
      } else {
        Fail(line_start, "malformed property line");
      }
      elements.back().properties.push_back(p);
    } else {
      Fail(line_start, "unknown header keyword '" + key + "'");
    }
  }
  if (!have_format) Fail(0, "missing format line");

  TriangleMesh mesh;
  bool have_vertices = false;
  long long vertex_count = 0;
  for (const Element& e : elements) {
    const bool is_vertex = e.name == "vertex";
    const bool is_face = e.name == "face";
    int ix = -1, iy = -1, iz = -1, inx = -1, iny = -1, inz = -1, iface = -1;
    for (int k = 0; k < static_cast<int>(e.properties.size()); ++k) {
      const std::string& n = e.properties[k].name;
      const bool scalar = !e.properties[k].is_list;
      if (is_vertex && scalar) {
        if (n == "x") ix = k;
        if (n == "y") iy = k;
        if (n == "z") iz = k;
        if (n == "nx") inx = k;
        if (n == "ny") iny = k;
        if (n == "nz") inz = k;
      }
      if (is_face && !scalar && (n == "vertex_indices" || n == "vertex_index")) {
        iface = k;
      }
    }
    if (is_vertex) {
      if (ix < 0 || iy < 0 || iz < 0) {
        throw Error(ErrorCode::kUnsupportedElement,
                    "vertex element lacks x/y/z properties");
      }
      have_vertices = true;
      vertex_count = e.count;
      mesh.vertices.reserve(static_cast<std::size_t>(
          std::min<long long>(e.count, static_cast<long long>(data.size()))));
    }
    const bool with_normals = is_vertex && inx >= 0 && iny >= 0 && inz >= 0;
    if (is_face && iface < 0) {
      throw Error(ErrorCode::kUnsupportedElement,
                  "face element lacks a vertex index list");
    }

    std::vector<double> scalars(e.properties.size());
    std::vector<long long> indices;
    for (long long r = 0; r < e.count; ++r) {
      const std::size_t record_start = reader.pos();
      for (int k = 0; k < static_cast<int>(e.properties.size()); ++k) {
        const Property& p = e.properties[k];
        std::size_t at = 0;
        auto value = [&](ScalarType t) {
          return binary ? reader.BinaryValue(t) : reader.AsciiValue(t, &at);
        };
        if (!p.is_list) {
          scalars[k] = value(p.value_type);
          continue;
        }
        const double count = value(p.count_type);
        if (count < 0) Fail(record_start, "negative list length");
        if (k == iface) indices.clear();
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
          const double v = value(p.value_type);
          if (k == iface) indices.push_back(static_cast<long long>(v));
        }
      }
      if (is_vertex) {
        mesh.vertices.emplace_back(scalars[ix], scalars[iy], scalars[iz]);
        if (with_normals) mesh.normals.emplace_back(scalars[inx], scalars[iny], scalars[inz]);
      } else if (is_face) {
        if (!have_vertices) Fail(record_start, "face element before vertices");
        if (indices.size() < 3) Fail(record_start, "face with fewer than 3 vertices");
        for (long long idx : indices) {
          if (idx < 0 || idx >= vertex_count) {
            Fail(record_start, "face references vertex " + std::to_string(idx) +
                                   " out of range");
          }
        }
        for (std::size_t i = 1; i + 1 < indices.size(); ++i) {
          mesh.triangles.push_back({static_cast<int>(indices[0]),
                                    static_cast<int>(indices[i]),
                                    static_cast<int>(indices[i + 1])});
        }
      }
    }
  }
  if (!have_vertices) {
    throw Error(ErrorCode::kUnsupportedElement, "PLY file has no vertex element");
  }
  return mesh;
}

TriangleMesh ReadPly(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParsePly(buffer.str());
}

TriangleMesh ReadPly(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadPly(in);
}

void WritePly(std::ostream& out, const TriangleMesh& mesh, PlyFormat format) {
  mesh.Validate();
  const bool normals = !mesh.normals.empty();
  const bool binary = format == PlyFormat::kBinaryLittleEndian;
  out << "ply\nformat " << (binary ? "binary_little_endian" : "ascii")
      << " 1.0\nelement vertex " << mesh.vertices.size()
      << "\nproperty double x\nproperty double y\nproperty double z\n";
  if (normals) {
    out << "property double nx\nproperty double ny\nproperty double nz\n";
  }
  out << "element face " << mesh.triangles.size()
      << "\nproperty list uchar int vertex_indices\nend_header\n";
  if (binary) {
    auto put = [&](auto v) { out.write(reinterpret_cast<const char*>(&v), sizeof(v)); };
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      for (int c = 0; c < 3; ++c) put(mesh.vertices[i][c]);
      if (normals) {
        for (int c = 0; c < 3; ++c) put(mesh.normals[i][c]);
      }
    }
    for (const auto& t : mesh.triangles) {
      put(std::uint8_t{3});
      for (int c = 0; c < 3; ++c) put(static_cast<std::int32_t>(t[c]));
    }
  } else {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      const auto& v = mesh.vertices[i];
      out << v.x() << ' ' << v.y() << ' ' << v.z();
      if (normals) {
        const auto& n = mesh.normals[i];
        out << ' ' << n.x() << ' ' << n.y() << ' ' << n.z();
      }
      out << '\n';
    }
    for (const auto& t : mesh.triangles) {
      out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "failed writing PLY data");
}

void WritePly(const std::string& path, const TriangleMesh& mesh,
              PlyFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  WritePly(out, mesh, format);
}

}  // namespace pose_forge
