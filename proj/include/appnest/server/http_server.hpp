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

#include <memory>
#include <string>

#include "appnest/server/api.hpp"
#include "appnest/server/config.hpp"

namespace httplib {
class Server;
}

namespace appnest::server {

// Binds an Api to a listening cpp-httplib server. Plain HTTP; TLS is
// terminated in front of it.
class HttpServer {
 public:
  HttpServer(Api& api, const ServerConfig& config);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds the configured port (0 picks a free one) and returns the port.
  int bind();
  // Blocks serving requests until stop() is called.
  void run();
  void stop();

 private:
  Api& api_;
  ServerConfig config_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace appnest::server
