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

#include "appnest/server/http_server.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "appnest/error.hpp"

namespace appnest::server {

HttpServer::HttpServer(Api& api, const ServerConfig& config)
    : api_(api), config_(config), server_(std::make_unique<httplib::Server>()) {
  server_->set_payload_max_length(config_.max_body_bytes);

  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    Request request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [k, v] : req.params) request.query.emplace(k, v);
    for (const auto& [k, v] : req.headers) request.headers.emplace(k, v);
    request.body = req.body;
    const auto response = api_.handle(request);
    res.status = response.status;
    for (const auto& [k, v] : response.headers) res.set_header(k, v);
    res.set_content(response.body, response.content_type);
  };
  const std::string any = ".*";
  server_->Get(any, forward);
  server_->Post(any, forward);
  server_->Put(any, forward);
  server_->Delete(any, forward);
  server_->Patch(any, forward);
  server_->Options(any, forward);

  // Transport-level errors (oversized bodies, bad request lines) bypass
  // Api::handle; the policy header is still attached to them.
  server_->set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
    if (!res.has_header(std::string(kCspHeaderName)))
      res.set_header(std::string(kCspHeaderName), api_.csp_value());
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind() {
  if (config_.bind_port == 0) {
    const int port = server_->bind_to_any_port(config_.bind_host);
    if (port < 0) throw Error(Errc::InvalidArgument, "cannot bind");
    return port;
  }
  if (!server_->bind_to_port(config_.bind_host, config_.bind_port))
    throw Error(Errc::InvalidArgument,
                "cannot bind " + config_.bind_host + ":" + std::to_string(config_.bind_port));
  return config_.bind_port;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace appnest::server
