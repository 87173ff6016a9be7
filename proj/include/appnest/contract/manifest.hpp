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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace appnest::contract {

enum class Runtime { Python, R, Javascript };
enum class ParameterKind { Path, String, Integer, Float, Boolean };
enum class ReturnKind { HtmlString, FileName };

// Wire labels used in the manifest document.
std::string_view to_label(Runtime r) noexcept;
std::string_view to_label(ParameterKind k) noexcept;
std::string_view to_label(ReturnKind k) noexcept;
std::optional<Runtime> runtime_from_label(std::string_view s) noexcept;
std::optional<ParameterKind> parameter_kind_from_label(std::string_view s) noexcept;
std::optional<ReturnKind> return_kind_from_label(std::string_view s) noexcept;

// Path and string parameters both carry std::string; the owning
// ParameterSpec's kind disambiguates.
using ParameterValue = std::variant<std::string, std::int64_t, double, bool>;

struct ParameterSpec {
  std::string name;
  ParameterKind kind = ParameterKind::String;
  std::string description;
  std::optional<ParameterValue> default_value;

  bool operator==(const ParameterSpec&) const = default;
};

struct EntryPointSpec {
  std::string function_name;
  std::vector<ParameterSpec> parameters;
  ReturnKind return_kind = ReturnKind::HtmlString;

  bool operator==(const EntryPointSpec&) const = default;
};

struct SourceRef {
  enum class Kind { Inline, Url };
  Kind kind = Kind::Inline;
  std::string value;  // source text or URL

  bool operator==(const SourceRef&) const = default;
};

struct ApplicationManifest {
  std::string name;
  std::string version;
  Runtime runtime = Runtime::Python;
  std::string short_description;
  std::string long_description;
  std::vector<std::string> tags;  // unique, declaration order kept
  EntryPointSpec entry_point;
  SourceRef source;

  bool operator==(const ApplicationManifest&) const = default;
};

inline constexpr std::size_t kMaxShortDescriptionChars = 280;

}  // namespace appnest::contract
