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

#include "appnest/contract/origins.hpp"

namespace appnest::server {

inline constexpr std::string_view kCspHeaderName = "Content-Security-Policy";

// Egress policy for platform pages: the own origin plus the fixed external
// origins, placed in script-src, connect-src and style-src alike.
struct CspPolicy {
  contract::OriginWhitelist allowed_origins;

  explicit CspPolicy(std::string own_origin) : allowed_origins(std::move(own_origin)) {}
};

// Deterministic header value; identical input always yields identical bytes.
std::string csp_header_value(const CspPolicy& policy);

}  // namespace appnest::server
