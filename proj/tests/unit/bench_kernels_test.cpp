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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "appnest/bench/kernels.hpp"

namespace appnest::bench::kernels {
namespace {

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (cpu_supports(Isa::Avx2)) out.push_back(avx2_kernels());
  return out;
}

TEST(Kernels, SelectionHonoursRequestAndCpu) {
  EXPECT_EQ(select_kernels(Isa::Scalar).isa, Isa::Scalar);
  if (cpu_supports(Isa::Avx2)) {
    EXPECT_EQ(select_kernels(Isa::Avx2).isa, Isa::Avx2);
  } else {
    EXPECT_THROW(select_kernels(Isa::Avx2), std::exception);
  }
  EXPECT_EQ(isa_from_label("avx2"), Isa::Avx2);
  EXPECT_FALSE(isa_from_label("neon").has_value());
}

TEST(Kernels, ScalarMatmulMatchesNaiveTripleLoop) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1, 2, 3, 7, 16}) {
    const auto a = uniform(rng, n * n);
    const auto b = uniform(rng, n * n);
    std::vector<double> c(n * n);
    matmul(scalar_kernels(), a, b, c, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
        EXPECT_NEAR(c[i * n + j], s, 1e-12) << n;
      }
    }
  }
}

// Vector variants agree with the scalar reference on every size, including
// ragged tails that do not fill a vector register.
TEST(Kernels, VariantsMatchScalarReference) {
  std::mt19937_64 rng(2);
  const auto& ref = scalar_kernels();
  for (const auto* k : available()) {
    for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 33, 64, 65}) {
      const auto a = uniform(rng, n * n);
      const auto b = uniform(rng, n * n);
      std::vector<double> c_ref(n * n);
      std::vector<double> c(n * n);
      ref.matmul(a.data(), b.data(), c_ref.data(), n);
      k->matmul(a.data(), b.data(), c.data(), n);
      for (std::size_t i = 0; i < c.size(); ++i) {
        ASSERT_NEAR(c[i], c_ref[i], 1e-12 * static_cast<double>(n)) << to_label(k->isa) << " n=" << n;
      }
    }
    for (std::size_t n : {0, 1, 3, 4, 15, 16, 17, 31, 32, 33, 1000, 100'003}) {
      const auto x = uniform(rng, n, 0.0, 1.0);
      const double s_ref = ref.sum(x.data(), n);
      EXPECT_NEAR(k->sum(x.data(), n), s_ref, 1e-12 * static_cast<double>(n + 1))
          << to_label(k->isa) << " n=" << n;

      std::vector<std::uint8_t> flips(n);
      for (auto& f : flips) f = (rng() & 1) != 0 ? 'H' : 'T';
      EXPECT_EQ(k->count_equal(flips.data(), n, 'H'), ref.count_equal(flips.data(), n, 'H'))
          << to_label(k->isa) << " n=" << n;

      const auto y0 = uniform(rng, n);
      auto y_ref = y0;
      auto y = y0;
      ref.axpy(-0.75, x.data(), y_ref.data(), n);
      k->axpy(-0.75, x.data(), y.data(), n);
      for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(y[i], y_ref[i], 1e-15) << n;
    }
  }
}

TEST(Kernels, CountEqualHandlesAllByteValues) {
  std::vector<std::uint8_t> bytes(256 * 3);
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(i);
  for (const auto* k : available()) {
    for (int v : {0, 1, int{'H'}, 127, 128, 255}) {
      EXPECT_EQ(k->count_equal(bytes.data(), bytes.size(), static_cast<std::uint8_t>(v)), 3u)
          << to_label(k->isa) << " " << v;
    }
  }
}

TEST(Kernels, SpanWrappersCheckShapes) {
  std::vector<double> a(4);
  std::vector<double> c(3);
  EXPECT_THROW(matmul(scalar_kernels(), a, a, c, 2), std::exception);
  EXPECT_THROW(axpy(scalar_kernels(), 1.0, a, c), std::exception);
}

}  // namespace
}  // namespace appnest::bench::kernels
