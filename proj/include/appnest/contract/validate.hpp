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
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "appnest/contract/manifest.hpp"
#include "appnest/contract/origins.hpp"

namespace appnest::contract {

struct Violation {
  std::string path;  // JSON pointer into the candidate document
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool mentions(std::string_view path) const;
};

using ValidationResult = std::variant<ApplicationManifest, ValidationReport>;

// Checks every manifest rule and collects all violations rather than
// stopping at the first. URL sources must resolve to an origin on
// `whitelist`.
ValidationResult validate_manifest(const nlohmann::json& candidate,
                                   const OriginWhitelist& whitelist);

// Parses `text` first; throws Error{MalformedDocument} when it is not JSON.
ValidationResult validate_manifest_text(std::string_view text,
                                        const OriginWhitelist& whitelist);

// Rebuilds a manifest that was validated before it was persisted. The URL
// origin check is skipped; any other violation throws Error{StorageError}.
ApplicationManifest manifest_from_stored_json(const nlohmann::json& stored);

nlohmann::json to_json(const ApplicationManifest& manifest);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const ParameterValue& value);

// name, version, runtime, short_description, tags
nlohmann::json summary_json(const ApplicationManifest& manifest);

}  // namespace appnest::contract
