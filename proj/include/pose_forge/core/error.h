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

#ifndef POSE_FORGE_CORE_ERROR_H_
#define POSE_FORGE_CORE_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pose_forge {

enum class ErrorCode {
  kInvalidArgument,
  kNonPositiveDepth,
  kDegenerateMesh,
  kDimensionMismatch,
  kTooFewVertices,
  kEmptyFragment,
  kBadFragmentIndex,
  kEmptyProjection,
  kDegenerateSample,
  kNoSolution,
  kTooFewPoints,
  kNearPlanarConfiguration,
  kNoHypothesis,
  kEmptyModel,
  kParseError,
  kUnsupportedElement,
  kMissingField,
  kValidationError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type (or the
// positioned ParseError below). The code is stable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a position. For binary inputs the position is a byte
// offset; for line-oriented text inputs it is a 1-based line number.
class ParseError : public Error {
 public:
  enum class Unit { kByteOffset, kLine };

  ParseError(Unit unit, std::int64_t position, const std::string& message);

  Unit unit() const { return unit_; }
  std::int64_t position() const { return position_; }

 private:
  Unit unit_;
  std::int64_t position_;
};

}  // namespace pose_forge

#endif  // POSE_FORGE_CORE_ERROR_H_
