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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "w2bgp/benchmarks.hpp"
#include "w2bgp/error.hpp"

namespace w2bgp {
namespace {

// Samples this small and tie-free use the exact null distribution of U.
constexpr std::size_t kExactMaxSize = 8;

// Two-sided p-value from the exact distribution of U, counted with the
// recurrence N(u; m, n) = N(u − n; m − 1, n) + N(u; m, n − 1).
double exact_u_p_value(double u, std::size_t n1, std::size_t n2) {
  const std::size_t max_u = n1 * n2;
  // counts[i][j][k]: arrangements of i and j values with U = k.
  std::vector<std::vector<std::vector<double>>> counts(
      n1 + 1, std::vector<std::vector<double>>(n2 + 1, std::vector<double>(max_u + 1, 0.0)));
  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      if (i == 0 || j == 0) {
        counts[i][j][0] = 1.0;
        continue;
      }
      for (std::size_t k = 0; k <= i * j; ++k) {
        double c = counts[i][j - 1][k];
        if (k >= j) c += counts[i - 1][j][k - j];
        counts[i][j][k] = c;
      }
    }
  }
  const std::vector<double>& dist = counts[n1][n2];
  double total = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  for (std::size_t k = 0; k <= max_u; ++k) {
    total += dist[k];
    if (static_cast<double>(k) <= u) lower += dist[k];
    if (static_cast<double>(k) >= u) upper += dist[k];
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

}  // namespace

GapCurve gap_curve(std::span<const double> best_seen, double y0, double ystar) {
  if (!(y0 > ystar + 1e-12)) {
    throw Error(ErrorKind::kDegenerateStart, "initial best " + std::to_string(y0) +
                                                 " is already at the optimum");
  }
  GapCurve curve{{}, y0, ystar};
  curve.values.reserve(best_seen.size());
  for (double y : best_seen) {
    curve.values.push_back(std::clamp((y0 - y) / (y0 - ystar), 0.0, 1.0));
  }
  return curve;
}

GapCurve all_ones_curve(std::size_t n, double y0, double ystar) {
  return GapCurve{std::vector<double>(n, 1.0), y0, ystar};
}

double augc(const GapCurve& curve) {
  if (curve.values.empty()) throw Error(ErrorKind::kInvalidArgument, "empty gap curve");
  double sum = 0.0;
  for (double g : curve.values) sum += g;
  return sum / static_cast<double>(curve.values.size());
}

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::kTooFewSamples, "each sample needs at least two values");
  }
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, true);
  for (double v : b) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // Σ (t³ − t) over tie groups
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) rank_sum_a += midrank;
    }
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  const double u = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
  const double mean = dn1 * dn2 / 2.0;
  const double variance = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (!(variance > 0.0)) return 1.0;  // every value tied
  if (tie_term == 0.0 && n1 <= kExactMaxSize && n2 <= kExactMaxSize) {
    return exact_u_p_value(u, n1, n2);
  }
  const double deviation = std::max(std::abs(u - mean) - 0.5, 0.0);
  const double z = deviation / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

std::vector<double> usage_fraction(const RunRecord& record) {
  std::vector<double> counts(std::max<std::size_t>(record.source_count, 1), 0.0);
  for (const QueryEntry& e : record.entries) {
    if (e.source >= counts.size()) counts.resize(e.source + 1, 0.0);
    counts[e.source] += 1.0;
  }
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (total == 0.0) return counts;
  for (double& c : counts) c = 100.0 * c / total;
  return counts;
}

}  // namespace w2bgp
