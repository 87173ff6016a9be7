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

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "kernels_internal.hpp"

namespace appnest::bench::kernels::detail {
namespace {

void matmul_avx2(const double* a, const double* b, double* c, std::size_t n) {
  std::fill(c, c + n * n, 0.0);
  const std::size_t wide = n - n % 4;
  for (std::size_t i = 0; i < n; ++i) {
    double* row = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      const __m256d va = _mm256_set1_pd(aik);
      const double* brow = b + k * n;
      std::size_t j = 0;
      for (; j < wide; j += 4) {
        const __m256d acc = _mm256_loadu_pd(row + j);
        _mm256_storeu_pd(row + j, _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), acc));
      }
      for (; j < n; ++j) row[j] += aik * brow[j];
    }
  }
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    acc2 = _mm256_add_pd(acc2, _mm256_loadu_pd(x + i + 8));
    acc3 = _mm256_add_pd(acc3, _mm256_loadu_pd(x + i + 12));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i];
  return s;
}

std::size_t count_equal_avx2(const std::uint8_t* x, std::size_t n, std::uint8_t value) {
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const auto mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, needle)));
    count += static_cast<std::size_t>(std::popcount(mask));
  }
  for (; i < n; ++i) count += x[i] == value ? 1 : 0;
  return count;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kAvx2{Isa::Avx2, matmul_avx2, sum_avx2, count_equal_avx2, axpy_avx2};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace appnest::bench::kernels::detail
