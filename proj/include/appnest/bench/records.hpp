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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "appnest/bench/workloads.hpp"

namespace appnest::bench {

// Header row of every timing CSV.
inline constexpr std::string_view kCsvHeader = "environment,kind,size,iteration,elapsed_ns";

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records);
void emit_csv(const std::filesystem::path& path, std::span<const BenchmarkRecord> records);

// Throws Error{ParseError} naming the 1-based line of the first bad row.
std::vector<BenchmarkRecord> parse_csv(std::istream& in);
std::vector<BenchmarkRecord> read_csv(const std::filesystem::path& path);

// Nearest-rank percentile of an ascending list: the value at rank
// ceil(p/100 * N), with p = 0 giving the minimum.
std::int64_t nearest_rank(std::span<const std::int64_t> sorted, double percentile);

struct Summary {
  std::string environment;
  WorkloadKind kind;
  std::size_t size;
  std::size_t count;
  std::int64_t min_ns;
  std::int64_t median_ns;
  std::int64_t p95_ns;
  std::int64_t max_ns;
};

// One row per (kind, size, environment), sorted by kind, size, environment.
// Throws Error{EmptyRecordSet}.
std::vector<Summary> summarize(std::span<const BenchmarkRecord> records);
std::string format_summaries(std::span<const Summary> summaries);

struct ComparisonCell {
  WorkloadKind kind;
  std::size_t size;
  std::int64_t native_median_ns;
  std::int64_t sandbox_median_ns;
  double ratio;  // sandbox / native
  bool sandbox_faster;
};

struct ComparisonReport {
  std::vector<ComparisonCell> cells;
};

// Cells are the (kind, size) pairs present in both inputs. Throws
// Error{NoOverlap} when there are none.
ComparisonReport compare_environments(std::span<const BenchmarkRecord> native,
                                      std::span<const BenchmarkRecord> sandbox);
ComparisonReport compare_environments(const std::filesystem::path& native_csv,
                                      const std::filesystem::path& sandbox_csv);
std::string format_report(const ComparisonReport& report);

}  // namespace appnest::bench
