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

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

namespace appnest::server {

struct ServerConfig {
  std::string bind_host = "127.0.0.1";
  int bind_port = 8080;
  std::string public_origin = "http://localhost:8080";
  std::string storage_path = "appnest.db";
  std::chrono::hours share_ttl{24 * 7};
  std::chrono::hours session_lifetime{24};
  unsigned share_posts_per_minute = 30;
  std::size_t max_body_bytes = 64u << 20;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

// Reads APPNEST_BIND (host:port), APPNEST_PUBLIC_ORIGIN, APPNEST_STORAGE,
// APPNEST_SHARE_TTL_HOURS, APPNEST_SESSION_HOURS, APPNEST_SHARE_RATE_PER_MIN,
// and APPNEST_MAX_BODY_MB. Unset variables keep their
// defaults; malformed ones throw Error{InvalidArgument}.
ServerConfig config_from_environment(const EnvLookup& lookup);
ServerConfig config_from_environment();

}  // namespace appnest::server
