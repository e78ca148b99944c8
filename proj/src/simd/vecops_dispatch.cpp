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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "w2bgp/error.hpp"
#include "w2bgp/simd/vecops.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define W2BGP_HAVE_AVX2_VARIANT 1
#endif
#if defined(__aarch64__)
#define W2BGP_HAVE_NEON_VARIANT 1
#endif

namespace w2bgp::simd {
namespace {

Isa detect() {
  if (const char* env = std::getenv("W2BGP_SIMD")) {
    const std::string_view name(env);
    if (name == "scalar") return Isa::kScalar;
    if (name == "avx2" && isa_available(Isa::kAvx2)) return Isa::kAvx2;
    if (name == "neon" && isa_available(Isa::kNeon)) return Isa::kNeon;
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<const Kernels*>& active_table() {
  static std::atomic<const Kernels*> table{&kernels_for(detect())};
  return table;
}

std::atomic<Isa>& active_tag() {
  static std::atomic<Isa> tag{detect()};
  return tag;
}

const Kernels& active() { return *active_table().load(std::memory_order_relaxed); }

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#ifdef W2BGP_HAVE_AVX2_VARIANT
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#ifdef W2BGP_HAVE_NEON_VARIANT
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("SIMD variant not available: ") + isa_name(isa));
  }
  switch (isa) {
#ifdef W2BGP_HAVE_AVX2_VARIANT
    case Isa::kAvx2: return avx2::kKernels;
#endif
#ifdef W2BGP_HAVE_NEON_VARIANT
    case Isa::kNeon: return neon::kKernels;
#endif
    default: return scalar::kKernels;
  }
}

Isa active_isa() { return active_tag().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  active_table().store(&kernels_for(isa), std::memory_order_relaxed);
  active_tag().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(),
                                   a.size() < b.size() ? a.size() : b.size());
}

void axpy(double w, std::span<const double> x, std::span<double> acc) {
  active().axpy(w, x.data(), acc.data(), x.size() < acc.size() ? x.size() : acc.size());
}

void lcb(std::span<const double> mean, std::span<const double> sd, double beta,
         std::span<double> out) {
  std::size_t n = out.size();
  if (mean.size() < n) n = mean.size();
  if (sd.size() < n) n = sd.size();
  active().lcb(mean.data(), sd.data(), beta, out.data(), n);
}

}  // namespace w2bgp::simd
