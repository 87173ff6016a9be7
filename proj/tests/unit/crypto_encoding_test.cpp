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

#include <random>

#include "appnest/crypto/encoding.hpp"
#include "appnest/crypto/random.hpp"

namespace appnest::crypto {
namespace {

TEST(Hex, RoundTripAndRejects) {
  EXPECT_EQ(to_hex(as_bytes("\x01\xab")), "01ab");
  EXPECT_EQ(from_hex("01AB"), (Bytes{0x01, 0xab}));
  EXPECT_FALSE(from_hex("abc").has_value());
  EXPECT_FALSE(from_hex("zz").has_value());
}

TEST(Base64, KnownValues) {
  EXPECT_EQ(base64_encode(as_bytes("")), "");
  EXPECT_EQ(base64_encode(as_bytes("f")), "Zg==");
  EXPECT_EQ(base64_encode(as_bytes("fo")), "Zm8=");
  EXPECT_EQ(base64_encode(as_bytes("foo")), "Zm9v");
  EXPECT_EQ(base64_encode(as_bytes("foobar")), "Zm9vYmFy");
  EXPECT_EQ(base64url_encode(Bytes{0xfb, 0xff}), "-_8");
}

TEST(Base64, RoundTripsRandomData) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n < 200; ++n) {
    Bytes data(n);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    EXPECT_EQ(base64_decode(base64_encode(data)), data) << n;
    EXPECT_EQ(base64url_decode(base64url_encode(data)), data) << n;
  }
}

TEST(Base64, StrictDecoding) {
  EXPECT_FALSE(base64_decode("Zg=").has_value());
  EXPECT_FALSE(base64_decode("Z g==").has_value());
  EXPECT_FALSE(base64_decode("Zm9v!").has_value());
  EXPECT_FALSE(base64url_decode("Zg==").has_value());
  EXPECT_FALSE(base64url_decode("+/").has_value());
}

TEST(SeededRandom, IsReproducible) {
  SeededRandom a(3);
  SeededRandom b(3);
  Bytes x(64);
  Bytes y(64);
  a.fill(x);
  b.fill(y);
  EXPECT_EQ(x, y);
}

}  // namespace
}  // namespace appnest::crypto
