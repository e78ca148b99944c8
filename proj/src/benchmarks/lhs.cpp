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

#include "w2bgp/benchmarks.hpp"
#include "w2bgp/error.hpp"
#include "w2bgp/random.hpp"

namespace w2bgp {

std::vector<Point> lhs_sample(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "LHS needs at least one point");
  if (d == 0) throw Error(ErrorKind::kInvalidDimension, "LHS needs d >= 1");
  Rng rng(derive_seed(seed, {0x1a5}));
  std::vector<Point> points(n, Point(d));
  std::vector<std::size_t> strata(n);
  for (std::size_t k = 0; k < d; ++k) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    // Fisher-Yates with the portable draw; std::shuffle is implementation-defined.
    for (std::size_t i = n; i > 1; --i) std::swap(strata[i - 1], strata[rng.below(i)]);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (static_cast<double>(strata[i]) + rng.uniform()) / static_cast<double>(n);
      points[i][k] = std::min(u, std::nextafter(1.0, 0.0));
    }
  }
  return points;
}

std::size_t default_initial_size(std::size_t d) {
  return std::max(d + 1, std::min<std::size_t>(2 * d, 10));
}

std::size_t default_budget(std::size_t d) { return std::min<std::size_t>(30 * d, 150); }

}  // namespace w2bgp
