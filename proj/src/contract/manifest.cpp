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

#include "appnest/contract/manifest.hpp"

namespace appnest::contract {

std::string_view to_label(Runtime r) noexcept {
  switch (r) {
    case Runtime::Python: return "python";
    case Runtime::R: return "r";
    case Runtime::Javascript: return "javascript";
  }
  return "";
}

std::string_view to_label(ParameterKind k) noexcept {
  switch (k) {
    case ParameterKind::Path: return "path";
    case ParameterKind::String: return "string";
    case ParameterKind::Integer: return "integer";
    case ParameterKind::Float: return "float";
    case ParameterKind::Boolean: return "boolean";
  }
  return "";
}

std::string_view to_label(ReturnKind k) noexcept {
  return k == ReturnKind::HtmlString ? "html" : "file";
}

std::optional<Runtime> runtime_from_label(std::string_view s) noexcept {
  if (s == "python") return Runtime::Python;
  if (s == "r") return Runtime::R;
  if (s == "javascript") return Runtime::Javascript;
  return std::nullopt;
}

std::optional<ParameterKind> parameter_kind_from_label(std::string_view s) noexcept {
  if (s == "path") return ParameterKind::Path;
  if (s == "string") return ParameterKind::String;
  if (s == "integer") return ParameterKind::Integer;
  if (s == "float") return ParameterKind::Float;
  if (s == "boolean") return ParameterKind::Boolean;
  return std::nullopt;
}

std::optional<ReturnKind> return_kind_from_label(std::string_view s) noexcept {
  if (s == "html") return ReturnKind::HtmlString;
  if (s == "file") return ReturnKind::FileName;
  return std::nullopt;
}

}  // namespace appnest::contract
