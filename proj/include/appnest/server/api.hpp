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
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "appnest/clock.hpp"
#include "appnest/crypto/random.hpp"
#include "appnest/registry/registry.hpp"
#include "appnest/server/csp.hpp"
#include "appnest/server/http.hpp"

namespace appnest::server {

struct ApiOptions {
  std::string public_origin = "http://localhost:8080";
  std::chrono::seconds session_lifetime = std::chrono::hours(24);
  unsigned share_posts_per_minute = 30;
};

struct RouteSpec {
  std::string method;
  std::string pattern;  // "{name}" segments capture one path segment
  bool requires_session = false;
};

struct Session {
  registry::UserId user;
  Timestamp issued_at;
  Timestamp expires_at;
};

// Opaque 256-bit bearer tokens with server-side records.
class SessionTable {
 public:
  SessionTable(crypto::RandomSource& randomness, std::chrono::seconds lifetime);

  std::pair<std::string, Session> issue(registry::UserId user, Timestamp now);
  std::optional<Session> lookup(std::string_view token, Timestamp now);
  bool revoke(std::string_view token);

 private:
  crypto::RandomSource& randomness_;
  std::chrono::seconds lifetime_;
  std::mutex mutex_;
  std::unordered_map<std::string, Session> sessions_;
};

// Sliding window: at most `limit` events per user in any 60 s.
class RateLimiter {
 public:
  explicit RateLimiter(unsigned limit) : limit_(limit) {}
  bool admit(registry::UserId user, Timestamp now);

 private:
  unsigned limit_;
  std::mutex mutex_;
  std::map<registry::UserId, std::deque<Timestamp>> events_;
};

// The HTTP face of the registry. Transport-independent: adapters turn wire
// requests into Request values and write back the Response.
class Api {
 public:
  Api(registry::Registry& registry, const Clock& clock, crypto::RandomSource& randomness,
      ApiOptions options = {});

  Response handle(const Request& request);

  // Every route the API answers. There is deliberately no route that
  // receives anything about application runs.
  [[nodiscard]] static const std::vector<RouteSpec>& routes();
  [[nodiscard]] const std::string& csp_value() const noexcept { return csp_; }

 private:
  struct Context;
  using Handler = Response (Api::*)(Context&);

  Response list_applications(Context& ctx);
  Response application_detail(Context& ctx);
  Response application_source(Context& ctx);
  Response publish_application(Context& ctx);
  Response register_user(Context& ctx);
  Response login(Context& ctx);
  Response logout(Context& ctx);
  Response store_share(Context& ctx);
  Response fetch_share(Context& ctx);
  Response upload_dataset(Context& ctx);
  Response list_datasets(Context& ctx);
  Response download_dataset(Context& ctx);

  Response dispatch(const Request& request, std::string& route_label);
  std::optional<std::string> bearer_token(const Request& request) const;

  registry::Registry& registry_;
  const Clock& clock_;
  ApiOptions options_;
  std::string csp_;
  SessionTable sessions_;
  RateLimiter share_limiter_;
};

// Structured error body {"code", "message", "status"}.
Response problem(int status, std::string_view code, std::string_view message);

}  // namespace appnest::server
