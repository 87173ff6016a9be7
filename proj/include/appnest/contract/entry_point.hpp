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

#include <string>
#include <string_view>
#include <vector>

#include "appnest/contract/manifest.hpp"

namespace appnest::contract {

enum class Presence { Found, Missing };

// Textual lint: does `source_text` contain a runtime-appropriate definition
// of the manifest's entry-point function? Nothing is executed.
Presence check_entry_point_presence(const ApplicationManifest& manifest,
                                    std::string_view source_text);

// Same check for an arbitrary function name.
bool defines_function(Runtime runtime, std::string_view source_text,
                      std::string_view function_name);

struct NamedDefault {
  std::string name;
  ParameterKind kind;
  ParameterValue value;

  bool operator==(const NamedDefault&) const = default;
};

// One entry per parameter in declaration order: the declared default, or
// the kind's neutral value.
std::vector<NamedDefault> render_parameter_defaults(
    const ApplicationManifest& manifest);

ParameterValue neutral_value(ParameterKind kind);

}  // namespace appnest::contract
