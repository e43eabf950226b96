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

#include "pose_forge/core/error.h"

namespace pose_forge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::kDegenerateMesh: return "DegenerateMesh";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewVertices: return "TooFewVertices";
    case ErrorCode::kEmptyFragment: return "EmptyFragment";
    case ErrorCode::kBadFragmentIndex: return "BadFragmentIndex";
    case ErrorCode::kEmptyProjection: return "EmptyProjection";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
    case ErrorCode::kNoSolution: return "NoSolution";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kNearPlanarConfiguration: return "NearPlanarConfiguration";
    case ErrorCode::kNoHypothesis: return "NoHypothesis";
    case ErrorCode::kEmptyModel: return "EmptyModel";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedElement: return "UnsupportedElement";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

namespace {

std::string PositionedMessage(ParseError::Unit unit, std::int64_t position,
                              const std::string& message) {
  const char* what = unit == ParseError::Unit::kByteOffset ? "byte " : "line ";
  return message + " (at " + what + std::to_string(position) + ")";
}

}  // namespace

ParseError::ParseError(Unit unit, std::int64_t position,
                       const std::string& message)
    : Error(ErrorCode::kParseError, PositionedMessage(unit, position, message)),
      unit_(unit),
      position_(position) {}

}  // namespace pose_forge
