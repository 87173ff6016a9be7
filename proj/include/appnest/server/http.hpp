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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace appnest::server {

struct CaseInsensitiveLess {
  bool operator()(std::string_view a, std::string_view b) const;
  using is_transparent = void;
};

// Transport-neutral request: the path is already percent-decoded.
struct Request {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> query;
  std::map<std::string, std::string, CaseInsensitiveLess> headers;
  std::string body;

  [[nodiscard]] std::optional<std::string> query_value(std::string_view key) const;
  [[nodiscard]] std::optional<std::string> header(std::string_view key) const;

  // Splits "path?query", percent-decoding both parts. Handy for tests and
  // for adapters that hand over a raw request target.
  static Request from_target(std::string method, std::string_view target,
                             std::string body = {});
};

struct Response {
  int status = 200;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type = "application/json";

  [[nodiscard]] std::optional<std::string> header(std::string_view key) const;
  void set_header(std::string key, std::string value);
};

std::string percent_decode(std::string_view s, bool plus_as_space);

}  // namespace appnest::server
