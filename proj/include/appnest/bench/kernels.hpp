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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace appnest::bench::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_label(Isa isa) noexcept;
std::optional<Isa> isa_from_label(std::string_view s) noexcept;

// Inner loops of the benchmark workloads. Every variant computes the same
// result as the scalar reference up to floating-point reassociation and
// fused multiply-add rounding; count_equal is exact.
struct KernelTable {
  Isa isa;
  // c = a * b for row-major n x n matrices. c must not alias a or b.
  void (*matmul)(const double* a, const double* b, double* c, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  std::size_t (*count_equal)(const std::uint8_t* x, std::size_t n, std::uint8_t value);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the build has no AVX2 variant (non-x86 targets).
const KernelTable* avx2_kernels() noexcept;

bool cpu_supports(Isa isa) noexcept;

// The requested variant, or the best supported one when `preferred` is
// empty. APPNEST_KERNELS=scalar|avx2 in the environment overrides the
// automatic choice. Throws Error{InvalidArgument} when the requested variant
// is unavailable on this machine.
const KernelTable& select_kernels(std::optional<Isa> preferred = std::nullopt);

// Span-checked wrappers.
void matmul(const KernelTable& k, std::span<const double> a, std::span<const double> b,
            std::span<double> c, std::size_t n);
double sum(const KernelTable& k, std::span<const double> x);
std::size_t count_equal(const KernelTable& k, std::span<const std::uint8_t> x,
                        std::uint8_t value);
void axpy(const KernelTable& k, double alpha, std::span<const double> x, std::span<double> y);

}  // namespace appnest::bench::kernels
