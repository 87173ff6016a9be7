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

#include <optional>
#include <string>
#include <string_view>

#include "appnest/bytes.hpp"

namespace appnest::crypto {

std::string to_hex(ByteView data);
std::optional<Bytes> from_hex(std::string_view hex);

// Standard alphabet with '=' padding.
std::string base64_encode(ByteView data);
std::optional<Bytes> base64_decode(std::string_view text);

// URL-safe alphabet ('-', '_'), no padding. Used for tokens.
std::string base64url_encode(ByteView data);
std::optional<Bytes> base64url_decode(std::string_view text);

}  // namespace appnest::crypto
