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

#include "oracles.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

namespace appnest::testing {
namespace {

void init_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium failed to initialise");
}

}  // namespace

Bytes oracle_sha256(ByteView data) {
  init_sodium();
  Bytes out(crypto_hash_sha256_BYTES);
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Bytes oracle_hmac_sha256(ByteView key, ByteView message) {
  init_sodium();
  crypto_auth_hmacsha256_state state;
  crypto_auth_hmacsha256_init(&state, key.data(), key.size());
  crypto_auth_hmacsha256_update(&state, message.data(), message.size());
  Bytes out(crypto_auth_hmacsha256_BYTES);
  crypto_auth_hmacsha256_final(&state, out.data());
  return out;
}

Bytes oracle_pbkdf2_sha256(ByteView password, ByteView salt, unsigned iterations,
                           std::size_t length) {
  Bytes out;
  for (std::uint32_t block = 1; out.size() < length; ++block) {
    Bytes msg(salt.begin(), salt.end());
    msg.push_back(static_cast<std::uint8_t>(block >> 24));
    msg.push_back(static_cast<std::uint8_t>(block >> 16));
    msg.push_back(static_cast<std::uint8_t>(block >> 8));
    msg.push_back(static_cast<std::uint8_t>(block));
    Bytes u = oracle_hmac_sha256(password, msg);
    Bytes t = u;
    for (unsigned i = 1; i < iterations; ++i) {
      u = oracle_hmac_sha256(password, u);
      for (std::size_t j = 0; j < t.size(); ++j) t[j] ^= u[j];
    }
    out.insert(out.end(), t.begin(), t.end());
  }
  out.resize(length);
  return out;
}

long long oracle_nearest_rank(std::vector<long long> samples, double percentile) {
  std::sort(samples.begin(), samples.end());
  for (const auto v : samples) {
    const auto at_or_below = std::count_if(samples.begin(), samples.end(),
                                           [v](long long x) { return x <= v; });
    if (static_cast<double>(at_or_below) * 100.0 >=
        percentile * static_cast<double>(samples.size())) {
      return v;
    }
  }
  return samples.back();
}

std::string hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (const auto b : data) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xF];
  }
  return out;
}

}  // namespace appnest::testing
