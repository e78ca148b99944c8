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

// Vector kernels behind the GP and barycenter inner loops.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// picked once at first use from CPU detection; W2BGP_SIMD=scalar|avx2|neon in
// the environment overrides the choice.
//
// Elementwise kernels (axpy, lcb) round identically in every variant. The
// reductions (dot, squared_distance) reassociate and may differ in the last
// few ulps between variants, never within one.

#include <cstddef>
#include <span>

namespace w2bgp::simd {

enum class Isa { kScalar, kAvx2, kNeon };

const char* isa_name(Isa isa);

// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

Isa active_isa();

// Overrides detection for the rest of the process. Throws Error if the
// variant is not available.
void set_active_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);

double squared_distance(std::span<const double> a, std::span<const double> b);

// acc[i] += w * x[i]
void axpy(double w, std::span<const double> x, std::span<double> acc);

// out[i] = mean[i] - beta * sd[i]
void lcb(std::span<const double> mean, std::span<const double> sd, double beta,
         std::span<double> out);

// Function table for one variant. Exposed so the equivalence tests can call
// each variant directly.
struct Kernels {
  double (*dot)(const double*, const double*, std::size_t);
  double (*squared_distance)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*lcb)(const double*, const double*, double, double*, std::size_t);
};

const Kernels& kernels_for(Isa isa);

namespace scalar {
extern const Kernels kKernels;
}
namespace avx2 {
extern const Kernels kKernels;
}
namespace neon {
extern const Kernels kKernels;
}

}  // namespace w2bgp::simd
