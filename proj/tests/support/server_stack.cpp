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

#include "server_stack.hpp"

#include <stdexcept>

#include "appnest/contract/seed_corpus.hpp"
#include "appnest/contract/validate.hpp"

namespace appnest::testing {
namespace {

registry::RegistryOptions registry_options(const StackOptions& o) {
  registry::RegistryOptions r;
  r.share_ttl = o.share_ttl;
  r.credential_iterations = o.credential_iterations;
  return r;
}

server::ApiOptions api_options(const StackOptions& o) {
  server::ApiOptions a;
  a.public_origin = o.public_origin;
  a.share_posts_per_minute = o.share_posts_per_minute;
  return a;
}

}  // namespace

ServerStack::ServerStack(StackOptions options)
    : randomness(options.seed),
      registry(storage, randomness, registry_options(options)),
      api(registry, clock, randomness, api_options(options)) {}

server::Response ServerStack::call(const std::string& method, const std::string& target,
                                   const std::string& body, const std::string& token) {
  auto request = server::Request::from_target(method, target, body);
  if (!token.empty()) request.headers.emplace("Authorization", "Bearer " + token);
  return api.handle(request);
}

std::string ServerStack::sign_up(const std::string& handle, const std::string& password) {
  const nlohmann::json creds{{"handle", handle}, {"password", password}};
  const auto reg = call("POST", "/auth/register", creds.dump());
  if (reg.status != 201) throw std::runtime_error("register failed: " + reg.body);
  const auto login = call("POST", "/auth/login", creds.dump());
  if (login.status != 200) throw std::runtime_error("login failed: " + login.body);
  return body_json(login).at("token").get<std::string>();
}

void ServerStack::grant(const std::string& handle, registry::Permission kind) {
  const auto op = registry.ensure_operator();
  const auto user = registry.find_user(handle);
  if (!user) throw std::runtime_error("no such user " + handle);
  const auto request = registry.request_permission(user->id, kind, clock.now());
  registry.grant_permission(op.id, request.id);
}

void ServerStack::seed_corpus() {
  const auto op = registry.ensure_operator();
  if (!registry.user(op.id).can_publish_app) grant(std::string(registry::kOperatorHandle),
                                                   registry::Permission::PublishApp);
  const contract::OriginWhitelist whitelist(kTestOrigin);
  for (const auto& doc : contract::seed_manifest_documents()) {
    auto result = contract::validate_manifest(doc, whitelist);
    registry.put_application(std::get<contract::ApplicationManifest>(result), op.id);
  }
}

nlohmann::json body_json(const server::Response& response) {
  return nlohmann::json::parse(response.body);
}

}  // namespace appnest::testing
