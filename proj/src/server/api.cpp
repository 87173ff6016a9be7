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

#include "appnest/server/api.hpp"

#include <algorithm>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "appnest/contract/validate.hpp"
#include "appnest/crypto/encoding.hpp"
#include "appnest/error.hpp"

namespace appnest::server {
namespace {

using nlohmann::json;

constexpr std::size_t kSessionTokenBytes = 32;  // 256 bits
constexpr std::string_view kSessionCookie = "session";

Response json_response(int status, const json& body) {
  Response r;
  r.status = status;
  r.body = body.dump();
  r.content_type = "application/json";
  return r;
}

Response binary_response(std::string body) {
  Response r;
  r.body = std::move(body);
  r.content_type = "application/octet-stream";
  return r;
}

int status_for(Errc code) {
  switch (code) {
    case Errc::NotFound: return 404;
    case Errc::Unauthenticated: return 401;
    case Errc::PermissionDenied:
    case Errc::NotAdmin: return 403;
    case Errc::DuplicateNameVersion:
    case Errc::DuplicateHandle:
    case Errc::DuplicatePending: return 409;
    case Errc::MalformedBlob:
    case Errc::MalformedDocument:
    case Errc::InvalidArgument: return 400;
    default: return 500;
  }
}

std::string iso8601(Timestamp t) {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(t)));
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t start = 1;
  if (path.empty() || path.front() != '/') return out;
  while (start <= path.size()) {
    const auto slash = path.find('/', start);
    out.push_back(path.substr(start, slash == std::string_view::npos ? slash : slash - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return out;
}

bool match_route(std::string_view pattern, std::string_view path,
                 std::map<std::string, std::string>& params) {
  const auto want = split_path(pattern);
  const auto have = split_path(path);
  if (want.size() != have.size()) return false;
  std::map<std::string, std::string> captured;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i].starts_with('{') && want[i].ends_with('}')) {
      if (have[i].empty()) return false;
      captured.emplace(std::string(want[i].substr(1, want[i].size() - 2)), std::string(have[i]));
    } else if (want[i] != have[i]) {
      return false;
    }
  }
  params = std::move(captured);
  return true;
}

struct Credentials {
  std::string handle;
  std::string password;
};

std::optional<Credentials> parse_credentials(const std::string& body) {
  const auto doc = json::parse(body, nullptr, false);
  if (!doc.is_object()) return std::nullopt;
  const auto h = doc.find("handle");
  const auto p = doc.find("password");
  if (h == doc.end() || p == doc.end() || !h->is_string() || !p->is_string())
    return std::nullopt;
  return Credentials{h->get<std::string>(), p->get<std::string>()};
}

}  // namespace

struct Api::Context {
  const Request& request;
  std::map<std::string, std::string> params;
  std::optional<Session> session;
  std::optional<std::string> token;

  const std::string& param(const std::string& key) const { return params.at(key); }
};

Response problem(int status, std::string_view code, std::string_view message) {
  Response r = json_response(status, {{"code", code}, {"message", message}, {"status", status}});
  r.content_type = "application/problem+json";
  return r;
}

SessionTable::SessionTable(crypto::RandomSource& randomness, std::chrono::seconds lifetime)
    : randomness_(randomness), lifetime_(lifetime) {}

std::pair<std::string, Session> SessionTable::issue(registry::UserId user, Timestamp now) {
  Bytes raw(kSessionTokenBytes);
  std::lock_guard lock(mutex_);
  while (true) {
    randomness_.fill(raw);
    auto token = crypto::base64url_encode(raw);
    Session s{user, now, now + lifetime_};
    if (sessions_.emplace(token, s).second) return {std::move(token), s};
  }
}

std::optional<Session> SessionTable::lookup(std::string_view token, Timestamp now) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(std::string(token));
  if (it == sessions_.end()) return std::nullopt;
  if (now >= it->second.expires_at) {
    sessions_.erase(it);
    return std::nullopt;
  }
  return it->second;
}

bool SessionTable::revoke(std::string_view token) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(std::string(token)) > 0;
}

bool RateLimiter::admit(registry::UserId user, Timestamp now) {
  std::lock_guard lock(mutex_);
  auto& window = events_[user];
  while (!window.empty() && window.front() <= now - std::chrono::seconds(60)) window.pop_front();
  if (window.size() >= limit_) return false;
  window.push_back(now);
  return true;
}

Api::Api(registry::Registry& registry, const Clock& clock, crypto::RandomSource& randomness,
         ApiOptions options)
    : registry_(registry),
      clock_(clock),
      options_(std::move(options)),
      csp_(csp_header_value(CspPolicy(options_.public_origin))),
      sessions_(randomness, options_.session_lifetime),
      share_limiter_(options_.share_posts_per_minute) {}

const std::vector<RouteSpec>& Api::routes() {
  static const std::vector<RouteSpec> table = {
      {"GET", "/applications", false},
      {"GET", "/applications/{name}/{version}", false},
      {"GET", "/applications/{name}/{version}/source", false},
      {"POST", "/applications", true},
      {"POST", "/auth/register", false},
      {"POST", "/auth/login", false},
      {"POST", "/auth/logout", true},
      {"POST", "/share", true},
      {"GET", "/share/{token}", false},
      {"POST", "/data", true},
      {"GET", "/data", false},
      {"GET", "/data/{id}", false},
  };
  return table;
}

std::optional<std::string> Api::bearer_token(const Request& request) const {
  if (auto auth = request.header("Authorization")) {
    constexpr std::string_view prefix = "Bearer ";
    if (auth->size() > prefix.size() && auth->starts_with(prefix))
      return auth->substr(prefix.size());
  }
  if (auto cookie = request.header("Cookie")) {
    std::string_view rest = *cookie;
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      auto item = rest.substr(0, semi);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      if (item.starts_with(kSessionCookie) && item.size() > kSessionCookie.size() &&
          item[kSessionCookie.size()] == '=')
        return std::string(item.substr(kSessionCookie.size() + 1));
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
  }
  return std::nullopt;
}

Response Api::handle(const Request& request) {
  std::string route_label = "unmatched";
  Response response;
  try {
    response = dispatch(request, route_label);
  } catch (const Error& e) {
    const int status = status_for(e.code());
    if (status == 500) spdlog::error("{} {}: {}", request.method, route_label, e.what());
    response = problem(status, to_string(e.code()), status == 500 ? "internal error" : e.what());
  } catch (const std::exception& e) {
    spdlog::error("{} {}: {}", request.method, route_label, e.what());
    response = problem(500, "InternalError", "internal error");
  }
  response.set_header(std::string(kCspHeaderName), csp_);
  response.set_header("X-Content-Type-Options", "nosniff");
  response.set_header("Referrer-Policy", "no-referrer");
  // Route patterns only: tokens and names in the concrete path stay out of logs.
  spdlog::info("{} {} -> {}", request.method, route_label, response.status);
  return response;
}

Response Api::dispatch(const Request& request, std::string& route_label) {
  static const std::vector<Handler> handlers = {
      &Api::list_applications, &Api::application_detail, &Api::application_source,
      &Api::publish_application, &Api::register_user, &Api::login,
      &Api::logout, &Api::store_share, &Api::fetch_share,
      &Api::upload_dataset, &Api::list_datasets, &Api::download_dataset,
  };
  const auto& table = routes();
  bool path_known = false;
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::map<std::string, std::string> params;
    if (!match_route(table[i].pattern, request.path, params)) continue;
    path_known = true;
    if (table[i].method != request.method) continue;
    route_label = table[i].pattern;

    Context ctx{request, std::move(params), std::nullopt, bearer_token(request)};
    if (table[i].requires_session) {
      if (ctx.token) ctx.session = sessions_.lookup(*ctx.token, clock_.now());
      if (!ctx.session) return problem(401, "Unauthenticated", "a valid session is required");
    }
    return (this->*handlers[i])(ctx);
  }
  if (path_known) return problem(405, "MethodNotAllowed", "method not allowed on this resource");
  return problem(404, "NotFound", "no such resource");
}

Response Api::list_applications(Context& ctx) {
  registry::SearchQuery query;
  query.tag = ctx.request.query_value("tag");
  query.text = ctx.request.query_value("q");
  const auto all = ctx.request.query_value("all_versions");
  query.all_versions = all && (*all == "true" || *all == "1");
  json out = json::array();
  for (const auto& m : registry_.search_applications(query))
    out.push_back(contract::summary_json(m));
  return json_response(200, out);
}

Response Api::application_detail(Context& ctx) {
  const auto manifest = registry_.get_application(ctx.param("name"), ctx.param("version"));
  return json_response(200, contract::to_json(manifest));
}

Response Api::application_source(Context& ctx) {
  const auto source = registry_.get_application_source(ctx.param("name"), ctx.param("version"));
  if (source.kind == contract::SourceRef::Kind::Url) {
    Response r = json_response(307, {{"url", source.value}});
    r.set_header("Location", source.value);
    return r;
  }
  Response r;
  r.body = source.value;
  r.content_type = "text/plain; charset=utf-8";
  return r;
}

Response Api::publish_application(Context& ctx) {
  const auto publisher = registry_.user(ctx.session->user);
  if (!publisher.can_publish_app)
    return problem(403, "PermissionDenied", "publishing requires the publish_app permission");
  const auto doc = json::parse(ctx.request.body, nullptr, false);
  if (doc.is_discarded()) return problem(400, "MalformedDocument", "body is not valid JSON");
  auto result = contract::validate_manifest(doc, CspPolicy(options_.public_origin).allowed_origins);
  if (auto* report = std::get_if<contract::ValidationReport>(&result)) {
    Response r = problem(422, "ValidationFailed", "manifest failed validation");
    auto body = json::parse(r.body);
    body["violations"] = contract::to_json(*report);
    r.body = body.dump();
    return r;
  }
  const auto& manifest = std::get<contract::ApplicationManifest>(result);
  registry_.put_application(manifest, publisher.id);
  spdlog::info("published {} {}", manifest.name, manifest.version);
  return json_response(201, {{"name", manifest.name}, {"version", manifest.version}});
}

Response Api::register_user(Context& ctx) {
  const auto creds = parse_credentials(ctx.request.body);
  if (!creds) return problem(400, "InvalidArgument", "expected {\"handle\", \"password\"}");
  const auto account = registry_.create_user(creds->handle, creds->password);
  return json_response(201, {{"user_id", account.id.value}, {"handle", account.handle}});
}

Response Api::login(Context& ctx) {
  const auto creds = parse_credentials(ctx.request.body);
  if (!creds) return problem(400, "InvalidArgument", "expected {\"handle\", \"password\"}");
  const auto account = registry_.authenticate(creds->handle, creds->password);
  if (!account) return problem(401, "Unauthenticated", "invalid handle or password");
  const auto [token, session] = sessions_.issue(account->id, clock_.now());
  Response r = json_response(200, {{"token", token},
                                   {"expires_at", iso8601(session.expires_at)},
                                   {"can_publish_app", account->can_publish_app},
                                   {"can_upload_data", account->can_upload_data}});
  const bool secure = options_.public_origin.starts_with("https://");
  r.set_header("Set-Cookie",
               fmt::format("{}={}; Path=/; Max-Age={}; HttpOnly; SameSite=Strict{}", kSessionCookie,
                           token, options_.session_lifetime.count(), secure ? "; Secure" : ""));
  return r;
}

Response Api::logout(Context& ctx) {
  sessions_.revoke(*ctx.token);
  Response r;
  r.status = 204;
  r.set_header("Set-Cookie", fmt::format("{}=; Path=/; Max-Age=0", kSessionCookie));
  return r;
}

Response Api::store_share(Context& ctx) {
  const auto now = clock_.now();
  if (!share_limiter_.admit(ctx.session->user, now))
    return problem(429, "RateLimited", "too many shares; try again in a minute");
  const auto receipt = registry_.store_share(as_bytes(ctx.request.body), ctx.session->user, now);
  return json_response(201, {{"token", receipt.token},
                             {"expires_at", iso8601(receipt.expires_at)},
                             {"link", options_.public_origin + "/receive#" + receipt.token}});
}

Response Api::fetch_share(Context& ctx) {
  const auto blob = registry_.fetch_share(ctx.param("token"), clock_.now());
  return binary_response(to_string(ByteView(blob)));
}

Response Api::upload_dataset(Context& ctx) {
  const auto uploader = registry_.user(ctx.session->user);
  if (!uploader.can_upload_data)
    return problem(403, "PermissionDenied", "uploading requires the upload_data permission");
  const auto name = ctx.request.query_value("name");
  if (!name || name->empty())
    return problem(400, "InvalidArgument", "the name query parameter is required");
  registry::DatasetUpload upload{*name, ctx.request.query_value("description").value_or(""),
                                 to_bytes(ctx.request.body)};
  const auto id = registry_.put_sample_dataset(upload, uploader.id);
  return json_response(201, {{"id", id}, {"name", upload.name},
                             {"byte_size", upload.content.size()}});
}

Response Api::list_datasets(Context&) {
  json out = json::array();
  for (const auto& d : registry_.list_sample_datasets())
    out.push_back({{"id", d.id}, {"name", d.name}, {"description", d.description},
                   {"byte_size", d.byte_size}});
  return json_response(200, out);
}

Response Api::download_dataset(Context& ctx) {
  const auto dataset = registry_.get_sample_dataset(ctx.param("id"));
  Response r = binary_response(to_string(ByteView(dataset.content)));
  std::string safe_name;
  for (char c : dataset.summary.name)
    safe_name += (c == '"' || c == '\\' || static_cast<unsigned char>(c) < 0x20) ? '_' : c;
  r.set_header("Content-Disposition", fmt::format("attachment; filename=\"{}\"", safe_name));
  return r;
}

}  // namespace appnest::server
