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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "appnest/bytes.hpp"
#include "appnest/crypto/random.hpp"

namespace appnest::crypto {

inline constexpr std::size_t kSaltSize = 16;
inline constexpr std::size_t kIvSize = 16;
inline constexpr std::size_t kKeySize = 32;
inline constexpr std::size_t kBlockSize = 16;
inline constexpr std::size_t kDigestSize = 32;
inline constexpr std::size_t kMinSealedSize = kSaltSize + kIvSize + kBlockSize;
inline constexpr std::size_t kMaxFileNameBytes = 0xFFFF;
inline constexpr unsigned kKdfIterations = 100'000;

using Digest = std::array<std::uint8_t, kDigestSize>;
using Salt = std::array<std::uint8_t, kSaltSize>;
using Iv = std::array<std::uint8_t, kIvSize>;

// A user secret. Wiped on destruction; deliberately has no stream or
// formatting support so it cannot end up in a log line.
class Passphrase {
 public:
  // Throws Error{EmptyPassphrase} for an empty secret.
  explicit Passphrase(std::string secret);
  ~Passphrase();
  Passphrase(const Passphrase&) = delete;
  Passphrase& operator=(const Passphrase&) = delete;
  Passphrase(Passphrase&& other) noexcept;
  Passphrase& operator=(Passphrase&&) = delete;

  [[nodiscard]] ByteView bytes() const noexcept { return as_bytes(secret_); }

 private:
  std::string secret_;
};

// 32-byte AES key, wiped on destruction.
class DerivedKey {
 public:
  DerivedKey() = default;
  ~DerivedKey();
  DerivedKey(const DerivedKey&) = default;
  DerivedKey& operator=(const DerivedKey&) = default;

  [[nodiscard]] std::span<const std::uint8_t, kKeySize> bytes() const noexcept {
    return key_;
  }
  [[nodiscard]] std::span<std::uint8_t, kKeySize> mutable_bytes() noexcept {
    return key_;
  }
  friend bool operator==(const DerivedKey& a, const DerivedKey& b) {
    return a.key_ == b.key_;
  }

 private:
  std::array<std::uint8_t, kKeySize> key_{};
};

// SHA-256 of `payload`.
Digest checksum(ByteView payload);

// PBKDF2-HMAC-SHA256, kKdfIterations rounds, 32-byte output.
DerivedKey derive_key(const Passphrase& passphrase,
                      std::span<const std::uint8_t, kSaltSize> salt);

// Wire form is salt(16) || iv(16) || ciphertext with no framing.
struct SealedBlob {
  Salt salt{};
  Iv iv{};
  Bytes ciphertext;

  [[nodiscard]] Bytes serialize() const;
  [[nodiscard]] std::size_t size() const noexcept {
    return kSaltSize + kIvSize + ciphertext.size();
  }

  // Structural check only: length >= 48 and ciphertext block-aligned.
  static bool is_well_formed(ByteView wire) noexcept;
  // Throws Error{MalformedBlob} when !is_well_formed(wire).
  static SealedBlob parse(ByteView wire);

  bool operator==(const SealedBlob&) const = default;
};

// Plaintext layout: checksum(32) || name_len(2, big-endian) || file_name ||
// payload, where checksum = SHA-256(name_len || file_name || payload).
Bytes encode_envelope(ByteView payload, std::string_view file_name);

struct OpenedShare {
  Bytes payload;
  std::string file_name;

  bool operator==(const OpenedShare&) const = default;
};

// Encrypts `payload` and its file name under a key derived from the
// passphrase and a fresh salt; the IV is fresh as well.
// Throws Error{FileNameTooLong} or Error{FileNameHasSeparators}.
SealedBlob seal(ByteView payload, std::string_view file_name,
                const Passphrase& passphrase, RandomSource& randomness);

// Reverses seal(). Every cryptographic or envelope failure (bad padding,
// truncated envelope, checksum mismatch, wrong passphrase) is reported as
// the same Error{IntegrityFailure}.
OpenedShare open(const SealedBlob& blob, const Passphrase& passphrase);

// open() with the key already derived from blob.salt. Callers that open
// many blobs under one salt skip the deliberately slow derivation.
OpenedShare open_with_key(const SealedBlob& blob, const DerivedKey& key);

// Parses the wire form first; structural problems raise
// Error{MalformedBlob} before any cryptography runs.
OpenedShare open(ByteView wire, const Passphrase& passphrase);

}  // namespace appnest::crypto
