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

#include "appnest/bench/workloads.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "appnest/error.hpp"

namespace appnest::bench {
namespace {

constexpr std::uint8_t kHeads = 'H';
constexpr std::uint8_t kTails = 'T';
constexpr double kInverseTolerance = 1e-6;

using SteadyClock = std::chrono::steady_clock;

std::int64_t elapsed_since(SteadyClock::time_point start) {
  const auto ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(SteadyClock::now() - start).count();
  return std::max<std::int64_t>(ns, 1);
}

const kernels::KernelTable& resolve(const RunOptions& options) {
  return options.kernels != nullptr ? *options.kernels : kernels::select_kernels();
}

void check_budget(const WorkloadSpec& spec, const RunOptions& options) {
  if (spec.size < 1 || spec.iterations < 1) {
    throw Error(Errc::InvalidArgument, "workload size and iterations must be at least 1");
  }
  if (spec.kind == WorkloadKind::MatMul || spec.kind == WorkloadKind::MatInverse) {
    // n*n must not overflow before the budget comparison.
    if (spec.size > (std::size_t{1} << 28)) {
      throw Error(Errc::SizeTooLargeForMemory,
                  fmt::format("{} size {} exceeds the memory budget", to_label(spec.kind),
                              spec.size));
    }
  }
  const std::size_t need = required_bytes(spec.kind, spec.size);
  if (need > options.memory_budget_bytes) {
    throw Error(Errc::SizeTooLargeForMemory,
                fmt::format("{} size {} needs {} bytes, budget is {}", to_label(spec.kind),
                            spec.size, need, options.memory_budget_bytes));
  }
}

[[noreturn]] void gate_failed(WorkloadKind kind, const std::string& what) {
  throw Error(Errc::GateFailed, fmt::format("{} correctness gate failed: {}", to_label(kind), what));
}

BenchmarkRecord record(const WorkloadSpec& spec, const RunOptions& options, std::size_t iteration,
                       std::int64_t ns) {
  return BenchmarkRecord{options.environment_label, spec.kind, spec.size, iteration, ns};
}

std::vector<double> identity(std::size_t n) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return m;
}

void make_diagonally_dominant(std::vector<double>& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] += static_cast<double>(n);
}

// Deviation allowed for a mean or count: five standard deviations, but never
// tighter than the given floor.
double band(double sigma, double floor) { return std::max(floor, 5.0 * sigma); }

}  // namespace

std::string_view to_label(WorkloadKind kind) noexcept {
  switch (kind) {
    case WorkloadKind::MatMul:
      return "matmul";
    case WorkloadKind::CoinFlips:
      return "coinflips";
    case WorkloadKind::MatInverse:
      return "matinverse";
    case WorkloadKind::ListSum:
      return "listsum";
  }
  return "matmul";
}

std::optional<WorkloadKind> workload_from_label(std::string_view s) noexcept {
  for (auto k : {WorkloadKind::MatMul, WorkloadKind::CoinFlips, WorkloadKind::MatInverse,
                 WorkloadKind::ListSum}) {
    if (to_label(k) == s) return k;
  }
  return std::nullopt;
}

std::mt19937_64 workload_rng(std::uint64_t seed, WorkloadKind kind, std::size_t size) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(size),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(size) >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> random_matrix(std::mt19937_64& rng, std::size_t n) {
  return random_list(rng, n * n);
}

std::vector<std::uint8_t> random_coin_flips(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> flips(n);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) bits = rng();
    flips[i] = (bits & 1U) != 0 ? kHeads : kTails;
    bits >>= 1;
  }
  return flips;
}

std::vector<double> random_list(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

std::vector<double> invert(const kernels::KernelTable& k, std::span<const double> a,
                           std::size_t n) {
  if (a.size() != n * n) throw Error(Errc::InvalidArgument, "matrix must be n*n");
  const std::size_t w = 2 * n;
  std::vector<double> aug(n * w, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aug[i * w + j] = a[i * n + j];
      scale = std::max(scale, std::abs(a[i * n + j]));
    }
    aug[i * w + n + i] = 1.0;
  }
  const double tiny = scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(aug[r * w + col]) > std::abs(aug[pivot * w + col])) pivot = r;
    }
    const double p = aug[pivot * w + col];
    if (!(std::abs(p) > tiny)) throw Error(Errc::SingularMatrix, "matrix is singular");
    if (pivot != col) {
      std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(pivot * w),
                       aug.begin() + static_cast<std::ptrdiff_t>(pivot * w + w),
                       aug.begin() + static_cast<std::ptrdiff_t>(col * w));
    }
    double* prow = aug.data() + col * w;
    const double inv = 1.0 / p;
    for (std::size_t j = col; j < w; ++j) prow[j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double* row = aug.data() + r * w;
      const double f = row[col];
      if (f == 0.0) continue;
      // Columns left of `col` are already zero in the pivot row.
      k.axpy(-f, prow + col, row + col, w - col);
    }
  }

  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(aug.begin() + static_cast<std::ptrdiff_t>(i * w + n), n,
                out.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return out;
}

double identity_residual(std::span<const double> a, std::span<const double> b, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::size_t required_bytes(WorkloadKind kind, std::size_t size) {
  switch (kind) {
    case WorkloadKind::MatMul:
      return size * size * sizeof(double) * 3;
    case WorkloadKind::MatInverse:
      // input, augmented copy (2n columns), result
      return size * size * sizeof(double) * 4;
    case WorkloadKind::CoinFlips:
      return size;
    case WorkloadKind::ListSum:
      return size * sizeof(double);
  }
  return 0;
}

std::vector<BenchmarkRecord> run_matmul(const WorkloadSpec& spec, const RunOptions& options) {
  check_budget(spec, options);
  const auto& k = resolve(options);
  {
    const auto id = identity(2);
    std::vector<double> c(4);
    kernels::matmul(k, id, id, c, 2);
    if (c != id) gate_failed(spec.kind, "identity * identity != identity");
  }

  const std::size_t n = spec.size;
  auto rng = workload_rng(spec.seed, spec.kind, n);
  std::vector<double> c(n * n);
  std::vector<BenchmarkRecord> out;
  out.reserve(spec.iterations);
  for (std::size_t it = 0; it < spec.iterations; ++it) {
    const auto a = random_matrix(rng, n);
    const auto b = random_matrix(rng, n);
    const auto start = SteadyClock::now();
    k.matmul(a.data(), b.data(), c.data(), n);
    out.push_back(record(spec, options, it, elapsed_since(start)));
  }
  return out;
}

std::vector<BenchmarkRecord> run_coin_flips(const WorkloadSpec& spec, const RunOptions& options) {
  check_budget(spec, options);
  const auto& k = resolve(options);
  const std::size_t n = spec.size;
  {
    if (k.count_equal(nullptr, 0, kHeads) != 0) gate_failed(spec.kind, "empty sequence has heads");
    auto gate_rng = workload_rng(~spec.seed, spec.kind, n);
    const auto flips = random_coin_flips(gate_rng, n);
    const auto heads = static_cast<double>(kernels::count_equal(k, flips, kHeads));
    const double half = static_cast<double>(n) / 2.0;
    const double sigma = std::sqrt(static_cast<double>(n)) / 2.0;
    if (std::abs(heads - half) > band(sigma, 0.0)) {
      gate_failed(spec.kind, fmt::format("{} heads out of {} is outside 5 sigma", heads, n));
    }
  }

  auto rng = workload_rng(spec.seed, spec.kind, n);
  std::vector<BenchmarkRecord> out;
  out.reserve(spec.iterations);
  volatile std::size_t sink = 0;
  for (std::size_t it = 0; it < spec.iterations; ++it) {
    const auto start = SteadyClock::now();
    const auto flips = random_coin_flips(rng, n);
    sink = k.count_equal(flips.data(), flips.size(), kHeads);
    out.push_back(record(spec, options, it, elapsed_since(start)));
  }
  (void)sink;
  return out;
}

std::vector<BenchmarkRecord> run_mat_inverse(const WorkloadSpec& spec,
                                             const RunOptions& options) {
  check_budget(spec, options);
  const auto& k = resolve(options);
  const std::size_t n = spec.size;
  {
    const std::vector<double> two{2.0};
    if (invert(k, two, 1) != std::vector<double>{0.5}) gate_failed(spec.kind, "inverse of [2]");
  }

  auto rng = workload_rng(spec.seed, spec.kind, n);
  std::vector<BenchmarkRecord> out;
  out.reserve(spec.iterations);
  for (std::size_t it = 0; it < spec.iterations; ++it) {
    auto a = random_matrix(rng, n);
    if (options.diagonal_dominance) make_diagonally_dominant(a, n);
    const auto start = SteadyClock::now();
    const auto inv = invert(k, a, n);
    const auto ns = elapsed_since(start);
    if (it == 0) {
      const double residual = identity_residual(a, inv, n);
      if (!(residual < kInverseTolerance)) {
        gate_failed(spec.kind, fmt::format("max |A*inv(A) - I| = {:g}", residual));
      }
    }
    out.push_back(record(spec, options, it, ns));
  }
  return out;
}

std::vector<BenchmarkRecord> run_list_sum(const WorkloadSpec& spec, const RunOptions& options) {
  check_budget(spec, options);
  const auto& k = resolve(options);
  const std::size_t n = spec.size;
  {
    const std::vector<double> one{0.375};
    if (kernels::sum(k, one) != 0.375) gate_failed(spec.kind, "singleton sum");
    if (n > 0) {
      auto gate_rng = workload_rng(~spec.seed, spec.kind, n);
      const auto xs = random_list(gate_rng, n);
      const double mean = kernels::sum(k, xs) / static_cast<double>(n);
      const double sigma = std::sqrt(1.0 / 12.0 / static_cast<double>(n));
      if (std::abs(mean - 0.5) > band(sigma, 0.01)) {
        gate_failed(spec.kind, fmt::format("mean {:g} of uniform(0,1) list", mean));
      }
    }
  }

  auto rng = workload_rng(spec.seed, spec.kind, n);
  std::vector<BenchmarkRecord> out;
  out.reserve(spec.iterations);
  volatile double sink = 0.0;
  for (std::size_t it = 0; it < spec.iterations; ++it) {
    const auto xs = random_list(rng, n);
    const auto start = SteadyClock::now();
    sink = k.sum(xs.data(), xs.size());
    out.push_back(record(spec, options, it, elapsed_since(start)));
  }
  (void)sink;
  return out;
}

std::vector<BenchmarkRecord> run_workload(const WorkloadSpec& spec, const RunOptions& options) {
  switch (spec.kind) {
    case WorkloadKind::MatMul:
      return run_matmul(spec, options);
    case WorkloadKind::CoinFlips:
      return run_coin_flips(spec, options);
    case WorkloadKind::MatInverse:
      return run_mat_inverse(spec, options);
    case WorkloadKind::ListSum:
      return run_list_sum(spec, options);
  }
  throw Error(Errc::InvalidArgument, "unknown workload kind");
}

std::vector<BenchmarkRecord> run_sweep(WorkloadKind kind, std::span<const std::size_t> sizes,
                                       std::size_t iterations, std::uint64_t seed,
                                       const RunOptions& options) {
  for (const auto size : sizes) check_budget(WorkloadSpec{kind, size, iterations, seed}, options);
  std::vector<BenchmarkRecord> all;
  for (const auto size : sizes) {
    spdlog::info("bench {} size={} iterations={} kernels={}", to_label(kind), size, iterations,
                 kernels::to_label(resolve(options).isa));
    auto part = run_workload(WorkloadSpec{kind, size, iterations, seed}, options);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace appnest::bench
