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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace appnest::contract {

// Dotted-numeric version ("1.0.2"), ordered segment-wise as integers.
// Missing trailing segments count as zero; when two versions are otherwise
// equal the one with fewer segments sorts first, so the order stays total.
class Version {
 public:
  static std::optional<Version> parse(std::string_view text);

  [[nodiscard]] const std::vector<std::uint64_t>& segments() const noexcept {
    return segments_;
  }
  [[nodiscard]] std::string to_string() const;

  friend std::strong_ordering operator<=>(const Version& a, const Version& b);
  friend bool operator==(const Version& a, const Version& b) {
    return a.segments_ == b.segments_;
  }

 private:
  std::vector<std::uint64_t> segments_;
};

}  // namespace appnest::contract
