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

#include <cstddef>
#include <string>
#include <vector>

#include "appnest/bytes.hpp"

namespace appnest::testing {

// Independent implementations (libsodium) used to cross-check the
// production OpenSSL code paths. Never used by the library itself.
Bytes oracle_sha256(ByteView data);
Bytes oracle_hmac_sha256(ByteView key, ByteView message);
// PBKDF2 built directly from the HMAC definition above.
Bytes oracle_pbkdf2_sha256(ByteView password, ByteView salt, unsigned iterations,
                           std::size_t length);

// Brute-force nearest-rank percentile: smallest value v such that at least
// p% of the samples are <= v.
long long oracle_nearest_rank(std::vector<long long> samples, double percentile);

std::string hex(ByteView data);

}  // namespace appnest::testing
