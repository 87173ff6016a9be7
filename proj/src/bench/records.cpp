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

#include "appnest/bench/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include <fmt/format.h>

#include "appnest/error.hpp"

namespace appnest::bench {
namespace {

using CellKey = std::pair<WorkloadKind, std::size_t>;

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  throw Error(Errc::ParseError, fmt::format("line {}: {}", line_no, what));
}

std::map<CellKey, std::vector<std::int64_t>> group_by_cell(
    std::span<const BenchmarkRecord> records) {
  std::map<CellKey, std::vector<std::int64_t>> cells;
  for (const auto& r : records) cells[{r.kind, r.size}].push_back(r.elapsed_ns);
  for (auto& [key, v] : cells) std::sort(v.begin(), v.end());
  return cells;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (r.environment.empty() ||
        r.environment.find_first_of(",\r\n\"") != std::string::npos) {
      throw Error(Errc::InvalidArgument,
                  "environment label must be non-empty without commas, quotes or newlines");
    }
    out << r.environment << ',' << to_label(r.kind) << ',' << r.size << ',' << r.iteration << ','
        << r.elapsed_ns << '\n';
  }
}

void emit_csv(const std::filesystem::path& path, std::span<const BenchmarkRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open for writing: " + path.string());
  write_csv(out, records);
  out.flush();
  if (!out) throw Error(Errc::InvalidArgument, "write failed: " + path.string());
}

std::vector<BenchmarkRecord> parse_csv(std::istream& in) {
  std::vector<BenchmarkRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) bad_line(line_no, "expected header " + std::string(kCsvHeader));
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) bad_line(line_no, fmt::format("expected 5 fields, got {}", fields.size()));
    BenchmarkRecord r;
    if (fields[0].empty()) bad_line(line_no, "empty environment");
    r.environment = std::string(fields[0]);
    const auto kind = workload_from_label(fields[1]);
    if (!kind) bad_line(line_no, fmt::format("unknown workload kind \"{}\"", fields[1]));
    r.kind = *kind;
    if (!parse_number(fields[2], r.size)) bad_line(line_no, "size is not a non-negative integer");
    if (!parse_number(fields[3], r.iteration)) {
      bad_line(line_no, "iteration is not a non-negative integer");
    }
    if (!parse_number(fields[4], r.elapsed_ns) || r.elapsed_ns <= 0) {
      bad_line(line_no, "elapsed_ns is not a positive integer");
    }
    records.push_back(std::move(r));
  }
  if (line_no == 0) bad_line(1, "missing header");
  return records;
}

std::vector<BenchmarkRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open for reading: " + path.string());
  return parse_csv(in);
}

std::int64_t nearest_rank(std::span<const std::int64_t> sorted, double percentile) {
  if (sorted.empty()) throw Error(Errc::EmptyRecordSet, "no samples");
  if (!(percentile >= 0.0 && percentile <= 100.0)) {
    throw Error(Errc::InvalidArgument, "percentile must be within [0, 100]");
  }
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<Summary> summarize(std::span<const BenchmarkRecord> records) {
  if (records.empty()) throw Error(Errc::EmptyRecordSet, "no benchmark records");
  std::map<std::tuple<WorkloadKind, std::size_t, std::string>, std::vector<std::int64_t>> groups;
  for (const auto& r : records) groups[{r.kind, r.size, r.environment}].push_back(r.elapsed_ns);
  std::vector<Summary> out;
  out.reserve(groups.size());
  for (auto& [key, v] : groups) {
    std::sort(v.begin(), v.end());
    out.push_back(Summary{std::get<2>(key), std::get<0>(key), std::get<1>(key), v.size(),
                          v.front(), nearest_rank(v, 50.0), nearest_rank(v, 95.0), v.back()});
  }
  return out;
}

std::string format_summaries(std::span<const Summary> summaries) {
  std::string out = fmt::format("{:<12} {:<11} {:>10} {:>6} {:>14} {:>14} {:>14} {:>14}\n",
                                "environment", "kind", "size", "count", "min_ns", "median_ns",
                                "p95_ns", "max_ns");
  for (const auto& s : summaries) {
    out += fmt::format("{:<12} {:<11} {:>10} {:>6} {:>14} {:>14} {:>14} {:>14}\n", s.environment,
                       to_label(s.kind), s.size, s.count, s.min_ns, s.median_ns, s.p95_ns,
                       s.max_ns);
  }
  return out;
}

ComparisonReport compare_environments(std::span<const BenchmarkRecord> native,
                                      std::span<const BenchmarkRecord> sandbox) {
  const auto n = group_by_cell(native);
  const auto s = group_by_cell(sandbox);
  ComparisonReport report;
  for (const auto& [key, times] : n) {
    const auto it = s.find(key);
    if (it == s.end()) continue;
    const auto nm = nearest_rank(times, 50.0);
    const auto sm = nearest_rank(it->second, 50.0);
    const double ratio = static_cast<double>(sm) / static_cast<double>(nm);
    report.cells.push_back(ComparisonCell{key.first, key.second, nm, sm, ratio, sm < nm});
  }
  if (report.cells.empty()) {
    throw Error(Errc::NoOverlap, "no (kind, size) cell appears in both record sets");
  }
  return report;
}

ComparisonReport compare_environments(const std::filesystem::path& native_csv,
                                      const std::filesystem::path& sandbox_csv) {
  const auto native = read_csv(native_csv);
  const auto sandbox = read_csv(sandbox_csv);
  return compare_environments(native, sandbox);
}

std::string format_report(const ComparisonReport& report) {
  std::string out = "kind,size,native_median_ns,sandbox_median_ns,ratio,sandbox_faster\n";
  for (const auto& c : report.cells) {
    out += fmt::format("{},{},{},{},{:.4f},{}\n", to_label(c.kind), c.size, c.native_median_ns,
                       c.sandbox_median_ns, c.ratio, c.sandbox_faster ? "yes" : "no");
  }
  return out;
}

}  // namespace appnest::bench
