// Copyright 2026 The W2BGP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace w2bgp {

enum class ErrorKind {
  kNotPositiveDefinite,
  kDimensionMismatch,
  kLengthMismatch,
  kEmptyDataset,
  kNoConvergence,
  kInvalidIndex,
  kInvalidWeights,
  kNonPositiveFidelity,
  kUnknownProblem,
  kInvalidDimension,
  kMissingDefinitionFile,
  kParseError,
  kDegenerateStart,
  kTooFewSamples,
  kInvalidArgument,
  kConfigError,
};

const char* error_kind_name(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kInvalidIndex: return "InvalidIndex";
    case ErrorKind::kInvalidWeights: return "InvalidWeights";
    case ErrorKind::kNonPositiveFidelity: return "NonPositiveFidelity";
    case ErrorKind::kUnknownProblem: return "UnknownProblem";
    case ErrorKind::kInvalidDimension: return "InvalidDimension";
    case ErrorKind::kMissingDefinitionFile: return "MissingDefinitionFile";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kDegenerateStart: return "DegenerateStart";
    case ErrorKind::kTooFewSamples: return "TooFewSamples";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConfigError: return "ConfigError";
  }
  return "Error";
}

}  // namespace w2bgp
