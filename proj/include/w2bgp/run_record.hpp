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

#include <cstddef>
#include <vector>

#include "w2bgp/kernels.hpp"

namespace w2bgp {

// One evaluated query.
struct QueryEntry {
  std::size_t iteration = 0;  // 0 for the initial design
  std::size_t source = 0;     // agent index (federated), proposer (batch), source (MFBO)
  Point x;                    // original problem units
  double y = 0.0;
  double best_seen = 0.0;     // after this query, over the run's own observations
};

struct RunRecord {
  std::vector<QueryEntry> entries;
  // Best-seen trajectory used for the gap curve, one value per counted query.
  std::vector<double> best_seen_curve;
  std::vector<double> gap;
  double augc = 0.0;
  double wall_seconds = 0.0;
  std::size_t source_count = 1;
  // Batch sizes q per iteration (batch task only).
  std::vector<std::size_t> batch_sizes;
};

}  // namespace w2bgp
