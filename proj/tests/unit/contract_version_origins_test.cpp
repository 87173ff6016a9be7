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

#include "appnest/contract/origins.hpp"
#include "appnest/contract/version.hpp"

namespace appnest::contract {
namespace {

Version v(std::string_view s) {
  auto parsed = Version::parse(s);
  EXPECT_TRUE(parsed.has_value()) << s;
  return parsed.value_or(Version{});
}

TEST(Version, ParsesDottedNumerics) {
  EXPECT_TRUE(Version::parse("1").has_value());
  EXPECT_TRUE(Version::parse("1.0.2").has_value());
  EXPECT_TRUE(Version::parse("10.20.30.40").has_value());
  for (const char* bad : {"", "1.", ".1", "1..2", "v1", "1.0-beta", "1.a", " 1", "1 ",
                          "1234567890123456789"}) {
    EXPECT_FALSE(Version::parse(bad).has_value()) << bad;
  }
}

TEST(Version, ComparesSegmentsNumerically) {
  EXPECT_LT(v("1.2"), v("1.10"));
  EXPECT_LT(v("1.9.9"), v("2"));
  EXPECT_GT(v("1.1.0"), v("1.0.9"));
  EXPECT_LT(v("1.0"), v("1.0.0"));
  EXPECT_EQ(v("1.0.2").to_string(), "1.0.2");
}

TEST(Origins, ExternalListIsFixed) {
  const std::vector<std::string> expected{
      "https://*.r-wasm.org", "https://cdn.jsdelivr.net", "https://pypi.org",
      "https://files.pythonhosted.org", "https://raw.githubusercontent.com"};
  EXPECT_EQ(external_origins(), expected);
}

TEST(Origins, OwnOriginComesFirst) {
  const OriginWhitelist w("https://localhost:8443/");
  ASSERT_EQ(w.origins().size(), 6u);
  EXPECT_EQ(w.own_origin(), "https://localhost:8443");
}

TEST(Origins, UrlMatching) {
  const OriginWhitelist w("https://localhost:8443");
  EXPECT_TRUE(w.allows_url("https://localhost:8443/apps/x.py"));
  EXPECT_FALSE(w.allows_url("https://localhost/apps/x.py"));
  EXPECT_FALSE(w.allows_url("http://localhost:8443/apps/x.py"));
  EXPECT_TRUE(w.allows_url("https://webr.r-wasm.org/latest/webr.mjs"));
  EXPECT_TRUE(w.allows_url("https://repo.webr.r-wasm.org/pkg"));
  EXPECT_FALSE(w.allows_url("https://r-wasm.org/"));
  EXPECT_FALSE(w.allows_url("https://evilr-wasm.org/"));
  EXPECT_TRUE(w.allows_url("https://pypi.org:443/simple"));
  EXPECT_FALSE(w.allows_url("https://pypi.org:8443/simple"));
  EXPECT_FALSE(w.allows_url("https://pypi.org.evil.com/"));
  EXPECT_FALSE(w.allows_url("https://pypi.org@evil.com/"));
  EXPECT_TRUE(w.allows_url("https://CDN.jsdelivr.net/npm/x"));
  EXPECT_FALSE(w.allows_url("ftp://pypi.org/"));
  EXPECT_FALSE(w.allows_url("not a url"));
}

}  // namespace
}  // namespace appnest::contract
