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

#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "appnest/crypto/share.hpp"
#include "appnest/server/csp.hpp"
#include "capture_sink.hpp"
#include "server_stack.hpp"

namespace appnest::server {
namespace {

using appnest::testing::body_json;
using appnest::testing::ServerStack;
using appnest::testing::StackOptions;
using nlohmann::json;
using namespace std::chrono_literals;

constexpr const char* kGoldenCsp =
    "default-src 'none'; "
    "script-src https://appnest.example https://*.r-wasm.org https://cdn.jsdelivr.net "
    "https://pypi.org https://files.pythonhosted.org https://raw.githubusercontent.com "
    "'wasm-unsafe-eval'; "
    "connect-src https://appnest.example https://*.r-wasm.org https://cdn.jsdelivr.net "
    "https://pypi.org https://files.pythonhosted.org https://raw.githubusercontent.com; "
    "style-src https://appnest.example https://*.r-wasm.org https://cdn.jsdelivr.net "
    "https://pypi.org https://files.pythonhosted.org https://raw.githubusercontent.com "
    "'unsafe-inline'; "
    "img-src https://appnest.example data: blob:; "
    "worker-src https://appnest.example blob:; "
    "frame-src 'self' blob:; "
    "form-action https://appnest.example; "
    "base-uri 'none'; "
    "frame-ancestors 'none'";

std::string sealed_blob(std::uint64_t seed = 1) {
  crypto::SeededRandom rng(seed);
  const auto blob = crypto::seal(as_bytes("<p>result</p>"), "result.html",
                                 crypto::Passphrase(std::string("pw")), rng);
  return to_string(ByteView(blob.serialize()));
}

json manifest_doc(const std::string& name = "uploaded", const std::string& version = "1.0.0") {
  return {{"name", name},
          {"version", version},
          {"runtime", "python"},
          {"short_description", "An uploaded application"},
          {"tags", {"python", "example"}},
          {"source", {{"inline", "def run():\n    return '<p>hi</p>'\n"}}},
          {"entry_point", {{"function", "run"}, {"returns", "html"}}}};
}

std::string concrete(const std::string& pattern) {
  std::string out = pattern;
  for (const auto& [param, value] : std::vector<std::pair<std::string, std::string>>{
           {"{name}", "netANOVA"}, {"{version}", "1.0.0"}, {"{token}", "tok"}, {"{id}", "x"}}) {
    if (const auto at = out.find(param); at != std::string::npos) out.replace(at, param.size(), value);
  }
  return out;
}

TEST(Csp, GoldenValueForConfiguredOrigin) {
  EXPECT_EQ(csp_header_value(CspPolicy("https://appnest.example")),
            kGoldenCsp);
  EXPECT_EQ(std::string(kCspHeaderName), "Content-Security-Policy");
}

TEST(Csp, OwnOriginIsSubstituted) {
  const auto v = csp_header_value(CspPolicy("https://localhost:8443"));
  EXPECT_NE(v.find("https://localhost:8443"), std::string::npos);
  EXPECT_EQ(v.find("appnest.example"), std::string::npos);
}

TEST(Csp, SourceListsContainExactlySixOrigins) {
  const std::string v = kGoldenCsp;
  const std::regex origin(R"(https://[^ ;']+)");
  std::set<std::string> found;
  for (auto it = std::sregex_iterator(v.begin(), v.end(), origin); it != std::sregex_iterator(); ++it)
    found.insert(it->str());
  EXPECT_EQ(found.size(), 6u);
}

TEST(Routes, TableIsExactlyTheDocumentedSet) {
  std::set<std::pair<std::string, std::string>> actual;
  for (const auto& r : Api::routes()) actual.insert({r.method, r.pattern});
  const std::set<std::pair<std::string, std::string>> expected = {
      {"GET", "/applications"},
      {"GET", "/applications/{name}/{version}"},
      {"GET", "/applications/{name}/{version}/source"},
      {"POST", "/applications"},
      {"POST", "/auth/register"},
      {"POST", "/auth/login"},
      {"POST", "/auth/logout"},
      {"POST", "/share"},
      {"GET", "/share/{token}"},
      {"POST", "/data"},
      {"GET", "/data"},
      {"GET", "/data/{id}"},
  };
  EXPECT_EQ(actual, expected);
  EXPECT_EQ(Api::routes().size(), expected.size());
  const std::regex forbidden("run|exec|telemetry|metric|usage|analytic|event|track|stat",
                             std::regex::icase);
  for (const auto& r : Api::routes()) EXPECT_FALSE(std::regex_search(r.pattern, forbidden)) << r.pattern;
}

TEST(Routes, EveryRouteAndErrorCarriesCsp) {
  ServerStack stack;
  stack.seed_corpus();
  std::set<std::string> values;
  for (const auto& r : Api::routes()) {
    const auto resp = stack.call(r.method, concrete(r.pattern));
    const auto csp = resp.header(kCspHeaderName);
    ASSERT_TRUE(csp.has_value()) << r.method << " " << r.pattern;
    values.insert(*csp);
    EXPECT_EQ(resp.header("X-Content-Type-Options"), "nosniff");
  }
  for (const auto& [m, p] : std::vector<std::pair<std::string, std::string>>{
           {"GET", "/nowhere"}, {"DELETE", "/applications"}, {"PUT", "/share/x"}}) {
    const auto resp = stack.call(m, p);
    ASSERT_TRUE(resp.header(kCspHeaderName).has_value()) << m << " " << p;
    values.insert(*resp.header(kCspHeaderName));
  }
  EXPECT_EQ(values, std::set<std::string>{kGoldenCsp});
}

TEST(Routes, UnknownPathIs404AndWrongMethodIs405) {
  ServerStack stack;
  EXPECT_EQ(stack.call("GET", "/runs").status, 404);
  EXPECT_EQ(stack.call("POST", "/telemetry").status, 404);
  EXPECT_EQ(stack.call("DELETE", "/applications").status, 405);
  EXPECT_EQ(stack.call("GET", "/auth/login").status, 405);
}

TEST(Routes, WritesRequireSession) {
  ServerStack stack;
  for (const auto& r : Api::routes()) {
    if (!r.requires_session) continue;
    const auto resp = stack.call(r.method, r.pattern, "{}");
    EXPECT_EQ(resp.status, 401) << r.pattern;
    EXPECT_EQ(resp.content_type, "application/problem+json");
    EXPECT_EQ(body_json(resp)["code"], "Unauthenticated");
  }
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), "not-a-token").status, 401);
}

TEST(Routes, BrowsePathsNeedNoLogin) {
  ServerStack stack;
  stack.seed_corpus();
  EXPECT_EQ(stack.call("GET", "/applications").status, 200);
  EXPECT_EQ(stack.call("GET", "/applications/netANOVA/1.0.0").status, 200);
  EXPECT_EQ(stack.call("GET", "/applications/netANOVA/1.0.0/source").status, 200);
  EXPECT_EQ(stack.call("GET", "/data").status, 200);
}

TEST(Applications, ListAndFilter) {
  ServerStack stack;
  stack.seed_corpus();
  const auto all = body_json(stack.call("GET", "/applications"));
  ASSERT_TRUE(all.is_array());
  EXPECT_GE(all.size(), 15u);
  for (const auto& s : all) {
    std::set<std::string> keys;
    for (const auto& [k, v] : s.items()) keys.insert(k);
    EXPECT_EQ(keys, (std::set<std::string>{"name", "version", "runtime", "short_description", "tags"}));
  }
  const auto umap = body_json(stack.call("GET", "/applications?q=UMAP"));
  ASSERT_EQ(umap.size(), 1u);
  EXPECT_EQ(umap[0]["name"], "2D UMAP");
  EXPECT_TRUE(body_json(stack.call("GET", "/applications?tag=nonexistent")).empty());
  const auto r_apps = body_json(stack.call("GET", "/applications?tag=r&q=net"));
  for (const auto& s : r_apps) EXPECT_EQ(s["runtime"], "r");
  EXPECT_EQ(body_json(stack.call("GET", "/applications?q=2D%20PCA")).size(), 1u);
}

TEST(Applications, DetailAndSource) {
  ServerStack stack;
  stack.seed_corpus();
  const auto detail = stack.call("GET", "/applications/netANOVA/1.0.0");
  ASSERT_EQ(detail.status, 200);
  const auto doc = body_json(detail);
  EXPECT_FALSE(doc["long_description"].get<std::string>().empty());
  EXPECT_EQ(doc["entry_point"]["parameters"].size(), 3u);
  EXPECT_EQ(doc["entry_point"]["returns"], "file");

  const auto src = stack.call("GET", "/applications/netANOVA/1.0.0/source");
  EXPECT_EQ(src.content_type, "text/plain; charset=utf-8");
  EXPECT_EQ(src.body, doc["source"]["inline"].get<std::string>());

  EXPECT_EQ(stack.call("GET", "/applications/nope/1.0.0").status, 404);
  EXPECT_EQ(stack.call("GET", "/applications/netANOVA/9.9").status, 404);
  EXPECT_EQ(stack.call("GET", "/applications/2D%20PCA/1.0.0").status, 200);
}

TEST(Applications, UrlSourceRedirects) {
  ServerStack stack;
  const auto token = stack.sign_up("dev");
  stack.grant("dev", registry::Permission::PublishApp);
  auto doc = manifest_doc("remote");
  doc["source"] = {{"url", "https://raw.githubusercontent.com/o/r/main/app.py"}};
  ASSERT_EQ(stack.call("POST", "/applications", doc.dump(), token).status, 201);
  const auto src = stack.call("GET", "/applications/remote/1.0.0/source");
  EXPECT_EQ(src.status, 307);
  EXPECT_EQ(src.header("Location"), "https://raw.githubusercontent.com/o/r/main/app.py");
  EXPECT_EQ(body_json(src)["url"], "https://raw.githubusercontent.com/o/r/main/app.py");
}

TEST(Applications, PublishFlow) {
  ServerStack stack;
  const auto token = stack.sign_up("dev");
  EXPECT_EQ(stack.call("POST", "/applications", manifest_doc().dump()).status, 401);
  EXPECT_EQ(stack.call("POST", "/applications", manifest_doc().dump(), token).status, 403);
  stack.grant("dev", registry::Permission::PublishApp);
  const auto ok = stack.call("POST", "/applications", manifest_doc().dump(), token);
  ASSERT_EQ(ok.status, 201) << ok.body;
  EXPECT_EQ(body_json(ok), (json{{"name", "uploaded"}, {"version", "1.0.0"}}));
  EXPECT_EQ(stack.call("POST", "/applications", manifest_doc().dump(), token).status, 409);

  auto bad = manifest_doc("bad");
  bad["entry_point"]["parameters"] = json::array(
      {{{"name", "a"}, {"kind", "path"}, {"description", "x"}},
       {{"name", "b"}, {"kind", "string"}, {"description", "x"}},
       {{"name", "c"}, {"kind", "integer"}, {"description", "x"}},
       {{"name", "d"}, {"kind", "float"}, {"description", "x"}},
       {{"name", "e"}, {"kind", "boolean"}, {"description", "x"}},
       {{"name", "f"}, {"kind", "dataframe"}, {"description", "x"}}});
  const auto rejected = stack.call("POST", "/applications", bad.dump(), token);
  ASSERT_EQ(rejected.status, 422);
  const auto violations = body_json(rejected)["violations"];
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0]["path"], "/entry_point/parameters/5/kind");
  EXPECT_EQ(stack.call("POST", "/applications", "{nope", token).status, 400);
}

TEST(Auth, RegisterLoginLogout) {
  ServerStack stack;
  const json creds{{"handle", "alice"}, {"password", "pw-alice"}};
  EXPECT_EQ(stack.call("POST", "/auth/register", creds.dump()).status, 201);
  EXPECT_EQ(stack.call("POST", "/auth/register", creds.dump()).status, 409);
  EXPECT_EQ(stack.call("POST", "/auth/register", "[]").status, 400);
  EXPECT_EQ(stack.call("POST", "/auth/login",
                       json{{"handle", "alice"}, {"password", "wrong"}}.dump()).status, 401);
  const auto login = stack.call("POST", "/auth/login", creds.dump());
  ASSERT_EQ(login.status, 200);
  const auto body = body_json(login);
  const auto token = body["token"].get<std::string>();
  EXPECT_EQ(token.size(), 43u);  // 32 bytes, base64url without padding
  EXPECT_EQ(body["expires_at"], "2023-11-15T22:13:20Z");
  EXPECT_EQ(body["can_publish_app"], false);
  const auto cookie = login.header("Set-Cookie");
  ASSERT_TRUE(cookie.has_value());
  EXPECT_NE(cookie->find("HttpOnly"), std::string::npos);
  EXPECT_NE(cookie->find("Secure"), std::string::npos);

  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), token).status, 201);
  EXPECT_EQ(stack.call("POST", "/auth/logout", "", token).status, 204);
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), token).status, 401);
}

TEST(Auth, SessionCookieAuthenticates) {
  ServerStack stack;
  const auto token = stack.sign_up("cookie-user");
  auto request = Request::from_target("POST", "/share", sealed_blob());
  request.headers.emplace("Cookie", "theme=dark; session=" + token);
  EXPECT_EQ(stack.api.handle(request).status, 201);
}

TEST(Auth, SessionsExpire) {
  ServerStack stack;
  const auto token = stack.sign_up("bob");
  stack.clock.advance(24h - 1s);
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), token).status, 201);
  stack.clock.advance(1s);
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), token).status, 401);
}

TEST(Share, StoreFetchExpire) {
  ServerStack stack;
  const auto token = stack.sign_up("sharer");
  const auto blob = sealed_blob();
  const auto stored = stack.call("POST", "/share", blob, token);
  ASSERT_EQ(stored.status, 201);
  const auto receipt = body_json(stored);
  const auto share_token = receipt["token"].get<std::string>();
  EXPECT_EQ(receipt["link"], std::string(appnest::testing::kTestOrigin) + "/receive#" + share_token);
  EXPECT_EQ(receipt["expires_at"], "2023-11-21T22:13:20Z");

  const auto fetched = stack.call("GET", "/share/" + share_token);
  ASSERT_EQ(fetched.status, 200);
  EXPECT_EQ(fetched.content_type, "application/octet-stream");
  EXPECT_EQ(fetched.body, blob);
  const auto opened = crypto::open(as_bytes(fetched.body), crypto::Passphrase(std::string("pw")));
  EXPECT_EQ(opened.file_name, "result.html");

  stack.clock.advance(std::chrono::hours(24 * 7));
  EXPECT_EQ(stack.call("GET", "/share/" + share_token).status, 404);
  EXPECT_EQ(stack.call("GET", "/share/unknown").status, 404);
}

TEST(Share, StructuralChecks) {
  ServerStack stack;
  const auto token = stack.sign_up("sharer");
  EXPECT_EQ(stack.call("POST", "/share", std::string(47, 'x'), token).status, 400);
  EXPECT_EQ(stack.call("POST", "/share", std::string(49, 'x'), token).status, 400);
  EXPECT_EQ(stack.call("POST", "/share", std::string(48, 'x'), token).status, 201);
}

TEST(Share, RateLimitedPerUser) {
  StackOptions options;
  options.share_posts_per_minute = 3;
  ServerStack stack(options);
  const auto a = stack.sign_up("a");
  const auto b = stack.sign_up("b");
  for (int i = 0; i < 3; ++i) EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), a).status, 201);
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), a).status, 429);
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), b).status, 201);
  stack.clock.advance(60s);
  EXPECT_EQ(stack.call("POST", "/share", sealed_blob(), a).status, 201);
}

TEST(Data, UploadListDownload) {
  ServerStack stack;
  EXPECT_TRUE(body_json(stack.call("GET", "/data")).empty());
  const auto token = stack.sign_up("provider");
  EXPECT_EQ(stack.call("POST", "/data?name=a.csv", "1,2,3", token).status, 403);
  stack.grant("provider", registry::Permission::UploadData);
  std::string content;
  for (int i = 0; i < 256; ++i) content += static_cast<char>(i);
  const auto up = stack.call("POST", "/data?name=bytes.bin&description=all%20bytes", content, token);
  ASSERT_EQ(up.status, 201) << up.body;
  const auto id = body_json(up)["id"].get<std::string>();
  EXPECT_EQ(body_json(up)["byte_size"], 256);
  EXPECT_EQ(stack.call("POST", "/data", "x", token).status, 400);

  const auto list = body_json(stack.call("GET", "/data"));
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0]["description"], "all bytes");
  const auto down = stack.call("GET", "/data/" + id);
  ASSERT_EQ(down.status, 200);
  EXPECT_EQ(down.body, content);
  EXPECT_EQ(down.header("Content-Disposition"), "attachment; filename=\"bytes.bin\"");
  EXPECT_EQ(stack.call("GET", "/data/missing").status, 404);
}

TEST(Logging, RequestLogsCarryNoSecrets) {
  appnest::testing::ScopedLogCapture capture;
  ServerStack stack;
  const auto token = stack.sign_up("logger", "very-secret-password-5521");
  const auto share = body_json(stack.call("POST", "/share", sealed_blob(), token));
  const auto share_token = share["token"].get<std::string>();
  (void)stack.call("GET", "/share/" + share_token);
  (void)stack.call("POST", "/auth/logout", "", token);
  const auto logs = capture.sink().joined();
  EXPECT_FALSE(logs.empty());
  EXPECT_EQ(logs.find("very-secret-password-5521"), std::string::npos);
  EXPECT_EQ(logs.find(token), std::string::npos);
  EXPECT_EQ(logs.find(share_token), std::string::npos);
}

}  // namespace
}  // namespace appnest::server
