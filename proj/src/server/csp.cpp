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

#include "appnest/server/csp.hpp"

namespace appnest::server {
namespace {

std::string source_list(const std::vector<std::string>& origins) {
  std::string out;
  for (const auto& origin : origins) {
    if (!out.empty()) out += ' ';
    out += origin;
  }
  return out;
}

}  // namespace

std::string csp_header_value(const CspPolicy& policy) {
  const auto& origins = policy.allowed_origins.origins();
  const auto& own = policy.allowed_origins.own_origin();
  const auto all = source_list(origins);
  std::string v;
  v += "default-src 'none'; ";
  v += "script-src " + all + " 'wasm-unsafe-eval'; ";
  v += "connect-src " + all + "; ";
  v += "style-src " + all + " 'unsafe-inline'; ";
  v += "img-src " + own + " data: blob:; ";
  v += "worker-src " + own + " blob:; ";
  v += "frame-src 'self' blob:; ";
  v += "form-action " + own + "; ";
  v += "base-uri 'none'; ";
  v += "frame-ancestors 'none'";
  return v;
}

}  // namespace appnest::server
