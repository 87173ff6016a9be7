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

#include "appnest/crypto/share.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/sha.h>

#include <algorithm>
#include <climits>
#include <memory>

#include "appnest/error.hpp"

namespace appnest::crypto {
namespace {

constexpr std::size_t kNameLengthSize = 2;
constexpr std::size_t kEnvelopeHeader = kDigestSize + kNameLengthSize;

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

[[noreturn]] void integrity_failure() { throw Error(Errc::IntegrityFailure); }

// Wipes a byte buffer before releasing it.
struct Scrubbed {
  Bytes data;
  ~Scrubbed() {
    if (!data.empty()) OPENSSL_cleanse(data.data(), data.size());
  }
};

Bytes aes_cbc(bool encrypt, const DerivedKey& key, const Iv& iv, ByteView input) {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error(Errc::StorageError, "cipher context allocation failed");
  if (EVP_CipherInit_ex(ctx.get(), EVP_aes_256_cbc(), nullptr, key.bytes().data(),
                        iv.data(), encrypt ? 1 : 0) != 1) {
    if (encrypt) throw Error(Errc::InvalidArgument, "cipher init failed");
    integrity_failure();
  }
  Bytes out(input.size() + kBlockSize);
  std::size_t written = 0;
  ByteView rest = input;
  while (!rest.empty()) {
    const auto chunk = std::min<std::size_t>(rest.size(), INT_MAX - kBlockSize);
    int n = 0;
    if (EVP_CipherUpdate(ctx.get(), out.data() + written, &n, rest.data(),
                         static_cast<int>(chunk)) != 1) {
      if (encrypt) throw Error(Errc::InvalidArgument, "encryption failed");
      integrity_failure();
    }
    written += static_cast<std::size_t>(n);
    rest = rest.subspan(chunk);
  }
  int n = 0;
  if (EVP_CipherFinal_ex(ctx.get(), out.data() + written, &n) != 1) {
    OPENSSL_cleanse(out.data(), out.size());
    if (encrypt) throw Error(Errc::InvalidArgument, "encryption failed");
    integrity_failure();
  }
  out.resize(written + static_cast<std::size_t>(n));
  return out;
}

// SHA-256 over everything that follows the checksum field, so the file name
// is covered as well as the payload.
Digest envelope_digest(ByteView name_and_payload) { return checksum(name_and_payload); }

void check_file_name(std::string_view file_name) {
  if (file_name.size() > kMaxFileNameBytes)
    throw Error(Errc::FileNameTooLong, "file name exceeds 65535 bytes");
  if (file_name.find_first_of("/\\") != std::string_view::npos)
    throw Error(Errc::FileNameHasSeparators, "file name contains a path separator");
}

}  // namespace

Passphrase::Passphrase(std::string secret) : secret_(std::move(secret)) {
  if (secret_.empty()) throw Error(Errc::EmptyPassphrase);
}

Passphrase::Passphrase(Passphrase&& other) noexcept : secret_(std::move(other.secret_)) {
  other.secret_.clear();
}

Passphrase::~Passphrase() {
  if (!secret_.empty()) OPENSSL_cleanse(secret_.data(), secret_.size());
}

DerivedKey::~DerivedKey() { OPENSSL_cleanse(key_.data(), key_.size()); }

Digest checksum(ByteView payload) {
  Digest out{};
  SHA256(payload.data(), payload.size(), out.data());
  return out;
}

DerivedKey derive_key(const Passphrase& passphrase,
                      std::span<const std::uint8_t, kSaltSize> salt) {
  const auto secret = passphrase.bytes();
  if (secret.empty()) throw Error(Errc::EmptyPassphrase);
  DerivedKey key;
  if (PKCS5_PBKDF2_HMAC(reinterpret_cast<const char*>(secret.data()),
                        static_cast<int>(secret.size()), salt.data(),
                        static_cast<int>(salt.size()), kKdfIterations, EVP_sha256(),
                        static_cast<int>(kKeySize), key.mutable_bytes().data()) != 1)
    throw Error(Errc::InvalidArgument, "key derivation failed");
  return key;
}

Bytes SealedBlob::serialize() const {
  Bytes out;
  out.reserve(size());
  out.insert(out.end(), salt.begin(), salt.end());
  out.insert(out.end(), iv.begin(), iv.end());
  out.insert(out.end(), ciphertext.begin(), ciphertext.end());
  return out;
}

bool SealedBlob::is_well_formed(ByteView wire) noexcept {
  return wire.size() >= kMinSealedSize &&
         (wire.size() - kSaltSize - kIvSize) % kBlockSize == 0;
}

SealedBlob SealedBlob::parse(ByteView wire) {
  if (!is_well_formed(wire))
    throw Error(Errc::MalformedBlob,
                "sealed blob must be salt(16) || iv(16) || ciphertext (non-empty, "
                "multiple of 16 bytes)");
  SealedBlob blob;
  std::copy_n(wire.begin(), kSaltSize, blob.salt.begin());
  std::copy_n(wire.begin() + kSaltSize, kIvSize, blob.iv.begin());
  blob.ciphertext.assign(wire.begin() + kSaltSize + kIvSize, wire.end());
  return blob;
}

Bytes encode_envelope(ByteView payload, std::string_view file_name) {
  check_file_name(file_name);
  Bytes out(kDigestSize);
  out.reserve(kEnvelopeHeader + file_name.size() + payload.size());
  out.push_back(static_cast<std::uint8_t>(file_name.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(file_name.size() & 0xFF));
  const auto name = as_bytes(file_name);
  out.insert(out.end(), name.begin(), name.end());
  out.insert(out.end(), payload.begin(), payload.end());
  const auto digest = envelope_digest(ByteView(out).subspan(kDigestSize));
  std::copy(digest.begin(), digest.end(), out.begin());
  return out;
}

SealedBlob seal(ByteView payload, std::string_view file_name,
                const Passphrase& passphrase, RandomSource& randomness) {
  Scrubbed plain{encode_envelope(payload, file_name)};
  SealedBlob blob;
  randomness.fill(blob.salt);
  randomness.fill(blob.iv);
  const auto key = derive_key(passphrase, blob.salt);
  blob.ciphertext = aes_cbc(true, key, blob.iv, plain.data);
  return blob;
}

OpenedShare open(const SealedBlob& blob, const Passphrase& passphrase) {
  if (blob.ciphertext.empty() || blob.ciphertext.size() % kBlockSize)
    throw Error(Errc::MalformedBlob, "ciphertext must be a positive multiple of 16 bytes");
  return open_with_key(blob, derive_key(passphrase, blob.salt));
}

OpenedShare open_with_key(const SealedBlob& blob, const DerivedKey& key) {
  if (blob.ciphertext.empty() || blob.ciphertext.size() % kBlockSize)
    throw Error(Errc::MalformedBlob, "ciphertext must be a positive multiple of 16 bytes");
  Scrubbed plain{aes_cbc(false, key, blob.iv, blob.ciphertext)};
  const auto& env = plain.data;
  if (env.size() < kEnvelopeHeader) integrity_failure();
  const std::size_t name_len = static_cast<std::size_t>(env[kDigestSize]) << 8 |
                               env[kDigestSize + 1];
  if (env.size() < kEnvelopeHeader + name_len) integrity_failure();

  const ByteView view(env);
  const auto name = view.subspan(kEnvelopeHeader, name_len);
  const auto payload = view.subspan(kEnvelopeHeader + name_len);
  const auto digest = envelope_digest(view.subspan(kDigestSize));
  if (CRYPTO_memcmp(digest.data(), env.data(), kDigestSize) != 0) integrity_failure();
  OpenedShare out{Bytes(payload.begin(), payload.end()), to_string(name)};
  if (out.file_name.find_first_of("/\\") != std::string::npos) integrity_failure();
  return out;
}

OpenedShare open(ByteView wire, const Passphrase& passphrase) {
  return open(SealedBlob::parse(wire), passphrase);
}

}  // namespace appnest::crypto
