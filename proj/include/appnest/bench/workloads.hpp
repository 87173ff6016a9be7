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
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "appnest/bench/kernels.hpp"

namespace appnest::bench {

enum class WorkloadKind { MatMul, CoinFlips, MatInverse, ListSum };

std::string_view to_label(WorkloadKind kind) noexcept;
std::optional<WorkloadKind> workload_from_label(std::string_view s) noexcept;

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::MatMul;
  std::size_t size = 64;  // matrix dimension, or element count
  std::size_t iterations = 100;
  std::uint64_t seed = 42;
};

struct BenchmarkRecord {
  std::string environment;
  WorkloadKind kind = WorkloadKind::MatMul;
  std::size_t size = 0;
  std::size_t iteration = 0;
  std::int64_t elapsed_ns = 1;

  bool operator==(const BenchmarkRecord&) const = default;
};

struct RunOptions {
  std::string environment_label = "native";
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
  // nullptr selects automatically.
  const kernels::KernelTable* kernels = nullptr;
  // Adds n to the diagonal of inversion inputs so they are invertible.
  bool diagonal_dominance = true;
};

// Input generators. The same (seed, kind, size) always yields the same
// stream of inputs.
std::mt19937_64 workload_rng(std::uint64_t seed, WorkloadKind kind, std::size_t size);
std::vector<double> random_matrix(std::mt19937_64& rng, std::size_t n);
std::vector<std::uint8_t> random_coin_flips(std::mt19937_64& rng, std::size_t n);
std::vector<double> random_list(std::mt19937_64& rng, std::size_t n);

// Gauss-Jordan inversion with partial pivoting. Throws Error{SingularMatrix}.
std::vector<double> invert(const kernels::KernelTable& k, std::span<const double> a,
                           std::size_t n);

// Max |A * B - I| over all entries.
double identity_residual(std::span<const double> a, std::span<const double> b, std::size_t n);

// size and iterations must be at least 1 (Error{InvalidArgument}).
// Each runner checks its correctness gates, then times `iterations` runs.
// A failed gate throws Error{GateFailed} before any timing happens.
// Inputs that would exceed the memory budget throw
// Error{SizeTooLargeForMemory} before allocation.
std::vector<BenchmarkRecord> run_matmul(const WorkloadSpec& spec, const RunOptions& options = {});
std::vector<BenchmarkRecord> run_coin_flips(const WorkloadSpec& spec,
                                            const RunOptions& options = {});
std::vector<BenchmarkRecord> run_mat_inverse(const WorkloadSpec& spec,
                                             const RunOptions& options = {});
std::vector<BenchmarkRecord> run_list_sum(const WorkloadSpec& spec,
                                          const RunOptions& options = {});
std::vector<BenchmarkRecord> run_workload(const WorkloadSpec& spec, const RunOptions& options = {});

// Runs every size in order; nothing is returned unless all sizes pass.
std::vector<BenchmarkRecord> run_sweep(WorkloadKind kind, std::span<const std::size_t> sizes,
                                       std::size_t iterations, std::uint64_t seed,
                                       const RunOptions& options = {});

// Bytes a workload of this size needs for its inputs and outputs.
std::size_t required_bytes(WorkloadKind kind, std::size_t size);

}  // namespace appnest::bench
