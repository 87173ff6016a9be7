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

#include "appnest/server/config.hpp"

#include <charconv>
#include <cstdlib>

#include <fmt/format.h>

#include "appnest/error.hpp"

namespace appnest::server {
namespace {

long long parse_positive(const std::string& name, const std::string& text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value <= 0)
    throw Error(Errc::InvalidArgument,
                fmt::format("{} must be a positive integer, got \"{}\"", name, text));
  return value;
}

}  // namespace

ServerConfig config_from_environment(const EnvLookup& lookup) {
  ServerConfig c;
  if (auto bind = lookup("APPNEST_BIND")) {
    const auto colon = bind->rfind(':');
    if (colon == std::string::npos || colon == 0)
      throw Error(Errc::InvalidArgument, "APPNEST_BIND must look like host:port");
    c.bind_host = bind->substr(0, colon);
    const auto port_text = bind->substr(colon + 1);
    int port = -1;
    const auto [ptr, ec] =
        std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 ||
        port > 65535)
      throw Error(Errc::InvalidArgument, "APPNEST_BIND port must be 0-65535");
    c.bind_port = port;
  }
  if (auto origin = lookup("APPNEST_PUBLIC_ORIGIN")) {
    if (!origin->starts_with("http://") && !origin->starts_with("https://"))
      throw Error(Errc::InvalidArgument, "APPNEST_PUBLIC_ORIGIN must be an http(s) origin");
    c.public_origin = *origin;
    while (c.public_origin.ends_with('/')) c.public_origin.pop_back();
  }
  if (auto path = lookup("APPNEST_STORAGE")) c.storage_path = *path;
  if (auto v = lookup("APPNEST_SHARE_TTL_HOURS"))
    c.share_ttl = std::chrono::hours(parse_positive("APPNEST_SHARE_TTL_HOURS", *v));
  if (auto v = lookup("APPNEST_SESSION_HOURS"))
    c.session_lifetime = std::chrono::hours(parse_positive("APPNEST_SESSION_HOURS", *v));
  if (auto v = lookup("APPNEST_SHARE_RATE_PER_MIN"))
    c.share_posts_per_minute =
        static_cast<unsigned>(parse_positive("APPNEST_SHARE_RATE_PER_MIN", *v));
  if (auto v = lookup("APPNEST_MAX_BODY_MB"))
    c.max_body_bytes = static_cast<std::size_t>(parse_positive("APPNEST_MAX_BODY_MB", *v)) << 20;
  return c;
}

ServerConfig config_from_environment() {
  return config_from_environment([](const char* name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name)) return std::string(v);
    return std::nullopt;
  });
}

}  // namespace appnest::server
