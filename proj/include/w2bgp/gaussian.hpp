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

namespace w2bgp {

// Univariate normal N(mean, sd²).
struct Gaussian1D {
  double mean = 0.0;
  double sd = 0.0;

  friend bool operator==(const Gaussian1D&, const Gaussian1D&) = default;
};

}  // namespace w2bgp
