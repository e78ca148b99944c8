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

#include <cmath>
#include <string>

#include "w2bgp/error.hpp"
#include "w2bgp/tasks.hpp"

namespace w2bgp {
namespace {

void require_index(std::size_t M, std::size_t m) {
  if (M == 0 || m >= M) {
    throw Error(ErrorKind::kInvalidIndex,
                "index " + std::to_string(m) + " outside 0.." + std::to_string(M) + "-1");
  }
}

// Divides by the sum and puts the rounding residue on the largest entry so
// the result passes the simplex check exactly.
WeightVector normalized(std::vector<double> raw) {
  double sum = 0.0;
  for (double v : raw) sum += v;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] /= sum;
    if (raw[i] > raw[largest]) largest = i;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i != largest) total += raw[i];
  }
  raw[largest] = 1.0 - total;
  return WeightVector(std::move(raw));
}

}  // namespace

std::string_view schema_name(Schema schema) {
  switch (schema) {
    case Schema::kSelfConfident: return "self-confident";
    case Schema::kEqual: return "equal";
    case Schema::kUncooperative: return "uncooperative";
    case Schema::kFidelity: return "fidelity";
    case Schema::kRescaled: return "rescaled";
  }
  return "unknown";
}

std::optional<Schema> parse_schema(std::string_view name) {
  for (Schema s : {Schema::kSelfConfident, Schema::kEqual, Schema::kUncooperative,
                   Schema::kFidelity, Schema::kRescaled}) {
    if (schema_name(s) == name) return s;
  }
  return std::nullopt;
}

WeightVector weights_self_confident(std::size_t M, std::size_t m) {
  if (M < 2) throw Error(ErrorKind::kInvalidIndex, "self-confident weights need M >= 2");
  require_index(M, m);
  std::vector<double> w(M, 0.5 / static_cast<double>(M - 1));
  w[m] = 0.5;
  return WeightVector(std::move(w));
}

WeightVector weights_equal(std::size_t M) {
  if (M == 0) throw Error(ErrorKind::kInvalidIndex, "M must be >= 1");
  return WeightVector(std::vector<double>(M, 1.0 / static_cast<double>(M)));
}

WeightVector weights_uncooperative(std::size_t M, std::size_t m) {
  require_index(M, m);
  std::vector<double> w(M, 0.0);
  w[m] = 1.0;
  return WeightVector(std::move(w));
}

WeightVector weights_fidelity(std::span<const double> fidelities) {
  if (fidelities.empty()) throw Error(ErrorKind::kNonPositiveFidelity, "no fidelities");
  for (double f : fidelities) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw Error(ErrorKind::kNonPositiveFidelity, "fidelity " + std::to_string(f));
    }
  }
  return normalized({fidelities.begin(), fidelities.end()});
}

WeightVector weights_rescaled(std::size_t M) {
  if (M == 0) throw Error(ErrorKind::kInvalidIndex, "M must be >= 1");
  std::vector<double> raw(M);
  double term = 0.75;
  for (double& v : raw) {
    v = term;
    term *= 0.25;
  }
  return normalized(std::move(raw));
}

WeightVector schema_weights(Schema schema, std::size_t M, std::size_t m) {
  require_index(M, m);
  if (M == 1) return WeightVector({1.0});
  switch (schema) {
    case Schema::kSelfConfident: return weights_self_confident(M, m);
    case Schema::kEqual: return weights_equal(M);
    case Schema::kUncooperative: return weights_uncooperative(M, m);
    case Schema::kFidelity:
    case Schema::kRescaled: break;
  }
  throw Error(ErrorKind::kInvalidArgument,
              std::string(schema_name(schema)) + " is a multi-fidelity schema");
}

}  // namespace w2bgp
