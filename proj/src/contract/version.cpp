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

#include "appnest/contract/version.hpp"

#include <algorithm>
#include <charconv>

namespace appnest::contract {

std::optional<Version> Version::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Version v;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    const auto segment = text.substr(start, dot == std::string_view::npos
                                                ? std::string_view::npos
                                                : dot - start);
    if (segment.empty() || segment.size() > 18) return std::nullopt;
    std::uint64_t value = 0;
    const auto* end = segment.data() + segment.size();
    const auto [ptr, ec] = std::from_chars(segment.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    v.segments_.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return v;
}

std::string Version::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(segments_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const Version& a, const Version& b) {
  const auto n = std::max(a.segments_.size(), b.segments_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = i < a.segments_.size() ? a.segments_[i] : 0;
    const auto y = i < b.segments_.size() ? b.segments_[i] : 0;
    if (auto c = x <=> y; c != 0) return c;
  }
  return a.segments_.size() <=> b.segments_.size();
}

}  // namespace appnest::contract
