// Copyright 2026 The appnest Authors
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
#include <cstdlib>
#include <string>

#include "appnest/bench/kernels.hpp"
#include "appnest/error.hpp"
#include "kernels_internal.hpp"

namespace appnest::bench::kernels {
namespace {

void matmul_scalar(const double* a, const double* b, double* c, std::size_t n) {
  std::fill(c, c + n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      const double* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += aik * brow[j];
    }
  }
}

// Strictly left to right so the reference has one defined rounding order.
double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

std::size_t count_equal_scalar(const std::uint8_t* x, std::size_t n, std::uint8_t value) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += x[i] == value ? 1 : 0;
  return count;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kScalar{Isa::Scalar, matmul_scalar, sum_scalar, count_equal_scalar,
                              axpy_scalar};

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidArgument, what);
}

}  // namespace

std::string_view to_label(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "scalar";
}

std::optional<Isa> isa_from_label(std::string_view s) noexcept {
  if (s == "scalar") return Isa::Scalar;
  if (s == "avx2") return Isa::Avx2;
  return std::nullopt;
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(APPNEST_HAVE_AVX2_KERNELS)
  return &detail::avx2_table();
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(APPNEST_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_kernels(std::optional<Isa> preferred) {
  if (!preferred) {
    if (const char* env = std::getenv("APPNEST_KERNELS"); env != nullptr && *env != '\0') {
      const std::string_view label(env);
      if (label != "auto") {
        preferred = isa_from_label(label);
        if (!preferred) {
          throw Error(Errc::InvalidArgument,
                      "APPNEST_KERNELS must be one of auto, scalar, avx2");
        }
      }
    }
  }
  if (!preferred) {
    if (cpu_supports(Isa::Avx2)) return *avx2_kernels();
    return kScalar;
  }
  if (!cpu_supports(*preferred)) {
    throw Error(Errc::InvalidArgument,
                std::string("kernel variant not available on this machine: ") +
                    std::string(to_label(*preferred)));
  }
  return *preferred == Isa::Avx2 ? *avx2_kernels() : kScalar;
}

void matmul(const KernelTable& k, std::span<const double> a, std::span<const double> b,
            std::span<double> c, std::size_t n) {
  require(a.size() == n * n && b.size() == n * n && c.size() == n * n,
          "matmul operands must be n*n");
  k.matmul(a.data(), b.data(), c.data(), n);
}

double sum(const KernelTable& k, std::span<const double> x) { return k.sum(x.data(), x.size()); }

std::size_t count_equal(const KernelTable& k, std::span<const std::uint8_t> x,
                        std::uint8_t value) {
  return k.count_equal(x.data(), x.size(), value);
}

void axpy(const KernelTable& k, double alpha, std::span<const double> x, std::span<double> y) {
  require(x.size() == y.size(), "axpy operands must have equal length");
  k.axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace appnest::bench::kernels
