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

#include <chrono>
#include <cstddef>

#include "w2bgp/tasks.hpp"

namespace w2bgp::detail {

// Inner-optimizer settings for one BO iteration (1-based).
AcquisitionSearch lcb_search(const TaskConfig& cfg, std::size_t d, std::size_t iteration);

// Fills gap and augc from best_seen_curve. A start already at the optimum
// scores an all-ones curve.
void finish_record(RunRecord& record, double y0, double ystar);

// Minimum of `values`; +inf when empty.
double min_of(std::span<const double> values);

// Appends a query and keeps the record's running best.
void log_query(RunRecord& record, std::size_t iteration, std::size_t source, Point x, double y);

double seconds_since(std::chrono::steady_clock::time_point start);

}  // namespace w2bgp::detail
