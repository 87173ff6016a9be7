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

#include "appnest/contract/entry_point.hpp"

#include <cctype>
#include <regex>

namespace appnest::contract {
namespace {

std::string regex_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') out += '\\';
    out += c;
  }
  return out;
}

// Definition forms per runtime. `N` is the escaped function name; the
// leading group stops `xrun` from matching `run`.
std::vector<std::regex> definition_patterns(Runtime runtime, std::string_view name) {
  const auto n = regex_escape(name);
  std::vector<std::string> sources;
  switch (runtime) {
    case Runtime::Python:
      sources = {R"(^\s*(async\s+)?def\s+)" + n + R"(\s*\()"};
      break;
    case Runtime::R:
      sources = {
          R"((^|[^A-Za-z0-9_.])`?)" + n + R"(`?\s*(<<-|<-|=)\s*(function\s*\(|\\\())",
      };
      break;
    case Runtime::Javascript:
      sources = {
          R"((^|[^A-Za-z0-9_$])function\s*\*?\s*)" + n + R"(\s*\()",
          R"((^|[^A-Za-z0-9_$.])(const|let|var)\s+)" + n +
              R"(\s*=\s*(async\s+)?(function\b|\([^)]*\)\s*=>|[A-Za-z_$][A-Za-z0-9_$]*\s*=>))",
          R"((^|[^A-Za-z0-9_$.])(exports\.|module\.exports\.)?)" + n +
              R"(\s*=\s*(async\s+)?(function\b|\([^)]*\)\s*=>|[A-Za-z_$][A-Za-z0-9_$]*\s*=>))",
      };
      break;
  }
  std::vector<std::regex> out;
  out.reserve(sources.size());
  for (const auto& s : sources) out.emplace_back(s, std::regex::ECMAScript);
  return out;
}

}  // namespace

bool defines_function(Runtime runtime, std::string_view source_text,
                      std::string_view function_name) {
  if (function_name.empty()) return false;
  const auto patterns = definition_patterns(runtime, function_name);
  std::size_t start = 0;
  while (start <= source_text.size()) {
    auto end = source_text.find('\n', start);
    if (end == std::string_view::npos) end = source_text.size();
    std::string line(source_text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (const auto& re : patterns)
      if (std::regex_search(line, re)) return true;
    start = end + 1;
  }
  return false;
}

Presence check_entry_point_presence(const ApplicationManifest& manifest,
                                    std::string_view source_text) {
  return defines_function(manifest.runtime, source_text,
                          manifest.entry_point.function_name)
             ? Presence::Found
             : Presence::Missing;
}

ParameterValue neutral_value(ParameterKind kind) {
  switch (kind) {
    case ParameterKind::Path:
    case ParameterKind::String: return std::string{};
    case ParameterKind::Integer: return std::int64_t{0};
    case ParameterKind::Float: return 0.0;
    case ParameterKind::Boolean: return false;
  }
  return std::string{};
}

std::vector<NamedDefault> render_parameter_defaults(
    const ApplicationManifest& manifest) {
  std::vector<NamedDefault> out;
  out.reserve(manifest.entry_point.parameters.size());
  for (const auto& p : manifest.entry_point.parameters)
    out.push_back({p.name, p.kind, p.default_value.value_or(neutral_value(p.kind))});
  return out;
}

}  // namespace appnest::contract
