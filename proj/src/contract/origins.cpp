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

#include "appnest/contract/origins.hpp"

#include <algorithm>
#include <cctype>

namespace appnest::contract {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view default_port(std::string_view scheme) {
  return scheme == "https" ? "443" : "80";
}

bool host_matches(std::string_view pattern, std::string_view host) {
  if (pattern.starts_with("*.")) {
    const auto suffix = pattern.substr(1);  // ".r-wasm.org"
    return host.size() > suffix.size() && host.ends_with(suffix);
  }
  return pattern == host;
}

}  // namespace

const std::vector<std::string>& external_origins() {
  static const std::vector<std::string> origins = {
      "https://*.r-wasm.org",
      "https://cdn.jsdelivr.net",
      "https://pypi.org",
      "https://files.pythonhosted.org",
      "https://raw.githubusercontent.com",
  };
  return origins;
}

bool parse_url_origin(std::string_view url, UrlOrigin& out) {
  const auto sep = url.find("://");
  if (sep == std::string_view::npos) return false;
  out.scheme = lower(url.substr(0, sep));
  if (out.scheme != "http" && out.scheme != "https") return false;
  auto rest = url.substr(sep + 3);
  const auto end = rest.find_first_of("/?#");
  auto authority = rest.substr(0, end);
  if (authority.find('@') != std::string_view::npos) return false;
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos) {
    out.port = std::string(authority.substr(colon + 1));
    authority = authority.substr(0, colon);
    if (out.port.empty() ||
        !std::all_of(out.port.begin(), out.port.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      return false;
  } else {
    out.port.clear();
  }
  out.host = lower(authority);
  return !out.host.empty();
}

OriginWhitelist::OriginWhitelist(std::string own_origin) {
  while (!own_origin.empty() && own_origin.back() == '/') own_origin.pop_back();
  origins_.push_back(std::move(own_origin));
  const auto& ext = external_origins();
  origins_.insert(origins_.end(), ext.begin(), ext.end());
}

bool OriginWhitelist::allows_url(std::string_view url) const {
  UrlOrigin target;
  if (!parse_url_origin(url, target)) return false;
  const auto target_port =
      target.port.empty() ? std::string(default_port(target.scheme)) : target.port;
  for (const auto& pattern : origins_) {
    UrlOrigin allowed;
    if (!parse_url_origin(pattern, allowed)) continue;
    const auto allowed_port = allowed.port.empty()
                                  ? std::string(default_port(allowed.scheme))
                                  : allowed.port;
    if (allowed.scheme == target.scheme && allowed_port == target_port &&
        host_matches(allowed.host, target.host))
      return true;
  }
  return false;
}

}  // namespace appnest::contract
