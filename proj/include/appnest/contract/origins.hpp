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

#include <string>
#include <string_view>
#include <vector>

namespace appnest::contract {

// The five third-party origins sandboxed applications may contact, in the
// order they appear in the content-security policy.
const std::vector<std::string>& external_origins();

// Origin allow-list: the platform's own origin followed by the external
// origins. Patterns are "scheme://host[:port]"; a leading "*." in the host
// matches one or more subdomain labels.
class OriginWhitelist {
 public:
  explicit OriginWhitelist(std::string own_origin);

  [[nodiscard]] const std::vector<std::string>& origins() const noexcept {
    return origins_;
  }
  [[nodiscard]] const std::string& own_origin() const noexcept {
    return origins_.front();
  }

  // True when the origin of `url` is covered by one of the patterns.
  [[nodiscard]] bool allows_url(std::string_view url) const;

 private:
  std::vector<std::string> origins_;
};

struct UrlOrigin {
  std::string scheme;
  std::string host;
  std::string port;  // empty when implicit
};

// Splits the origin out of an absolute http(s) URL; false when `url` is not
// one.
bool parse_url_origin(std::string_view url, UrlOrigin& out);

}  // namespace appnest::contract
