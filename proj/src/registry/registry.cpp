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

#include "appnest/registry/registry.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include <fmt/format.h>

#include "appnest/contract/version.hpp"
#include "appnest/crypto/encoding.hpp"
#include "appnest/crypto/share.hpp"
#include "appnest/error.hpp"

namespace appnest::registry {
namespace {

constexpr std::size_t kShareTokenBytes = 16;    // 128 bits
constexpr std::size_t kDatasetIdBytes = 12;
constexpr std::size_t kCredentialSaltBytes = 16;
constexpr std::size_t kCredentialHashBytes = 32;
constexpr std::string_view kCredentialScheme = "pbkdf2-sha256";
constexpr std::string_view kLockedCredential = "!locked";

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool matches(const contract::ApplicationManifest& m, const SearchQuery& q) {
  if (q.tag && !q.tag->empty()) {
    const auto tag = fold(*q.tag);
    if (std::none_of(m.tags.begin(), m.tags.end(),
                     [&](const std::string& t) { return fold(t) == tag; }))
      return false;
  }
  if (q.text && !q.text->empty()) {
    const auto needle = fold(*q.text);
    if (fold(m.name).find(needle) == std::string::npos &&
        fold(m.short_description).find(needle) == std::string::npos)
      return false;
  }
  return true;
}

contract::Version version_of(const contract::ApplicationManifest& m) {
  return contract::Version::parse(m.version).value_or(contract::Version{});
}

Bytes pbkdf2(std::string_view password, ByteView salt, unsigned iterations) {
  Bytes out(kCredentialHashBytes);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()), static_cast<int>(iterations),
                        EVP_sha256(), static_cast<int>(out.size()), out.data()) != 1)
    throw Error(Errc::StorageError, "credential hashing failed");
  return out;
}

}  // namespace

std::string_view to_label(Permission p) noexcept {
  return p == Permission::PublishApp ? "publish_app" : "upload_data";
}

std::string_view to_label(RequestStatus s) noexcept {
  switch (s) {
    case RequestStatus::Pending: return "pending";
    case RequestStatus::Granted: return "granted";
    case RequestStatus::Denied: return "denied";
  }
  return "pending";
}

std::optional<Permission> permission_from_label(std::string_view s) noexcept {
  if (s == "publish_app") return Permission::PublishApp;
  if (s == "upload_data") return Permission::UploadData;
  return std::nullopt;
}

std::string hash_credential(std::string_view password, crypto::RandomSource& randomness,
                            unsigned iterations) {
  Bytes salt(kCredentialSaltBytes);
  randomness.fill(salt);
  const auto hash = pbkdf2(password, salt, iterations);
  return fmt::format("{}${}${}${}", kCredentialScheme, iterations,
                     crypto::base64_encode(salt), crypto::base64_encode(hash));
}

bool verify_credential(std::string_view password, std::string_view stored) {
  // scheme$iterations$salt$hash
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = stored.find('$', start);
    parts.push_back(stored.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4 || parts[0] != kCredentialScheme) return false;
  unsigned iterations = 0;
  const auto [ptr, ec] =
      std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), iterations);
  if (ec != std::errc{} || iterations == 0) return false;
  const auto salt = crypto::base64_decode(parts[2]);
  const auto expected = crypto::base64_decode(parts[3]);
  if (!salt || !expected || expected->size() != kCredentialHashBytes) return false;
  const auto actual = pbkdf2(password, *salt, iterations);
  return CRYPTO_memcmp(actual.data(), expected->data(), actual.size()) == 0;
}

Registry::Registry(Storage& storage, crypto::RandomSource& randomness, RegistryOptions options)
    : storage_(storage), randomness_(randomness), options_(options) {
  if (options_.share_ttl <= std::chrono::seconds::zero())
    throw Error(Errc::InvalidArgument, "share TTL must be positive");
}

std::string Registry::random_token(std::size_t bytes) {
  Bytes raw(bytes);
  randomness_.fill(raw);
  return crypto::base64url_encode(raw);
}

UserAccount Registry::create_user(std::string_view handle, std::string_view password) {
  if (handle.empty() || handle.size() > 64 ||
      !std::all_of(handle.begin(), handle.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
      }))
    throw Error(Errc::InvalidArgument,
                "handle must be 1-64 characters of letters, digits, '_', '-' or '.'");
  if (handle == kOperatorHandle)
    throw Error(Errc::DuplicateHandle, "handle is reserved");
  if (password.empty()) throw Error(Errc::InvalidArgument, "password must not be empty");
  UserAccount account;
  account.handle = std::string(handle);
  account.credential_hash =
      hash_credential(password, randomness_, options_.credential_iterations);
  account.id = storage_.insert_user(account);
  return account;
}

std::optional<UserAccount> Registry::authenticate(std::string_view handle,
                                                  std::string_view password) {
  auto account = storage_.find_user_by_handle(handle);
  if (!account || !verify_credential(password, account->credential_hash)) return std::nullopt;
  return account;
}

UserAccount Registry::user(UserId id) {
  auto account = storage_.find_user(id);
  if (!account) throw Error(Errc::UnknownUser, fmt::format("no user {}", id.value));
  return *account;
}

std::optional<UserAccount> Registry::find_user(std::string_view handle) {
  return storage_.find_user_by_handle(handle);
}

UserAccount Registry::ensure_operator() {
  if (auto existing = storage_.find_user_by_handle(kOperatorHandle)) return *existing;
  UserAccount account;
  account.handle = std::string(kOperatorHandle);
  account.credential_hash = std::string(kLockedCredential);
  try {
    account.id = storage_.insert_user(account);
  } catch (const Error& e) {
    if (e.code() != Errc::DuplicateHandle) throw;
    return *storage_.find_user_by_handle(kOperatorHandle);
  }
  storage_.set_admin(account.id, true);
  account.is_admin = true;
  return account;
}

std::int64_t Registry::put_application(const contract::ApplicationManifest& manifest,
                                       UserId publisher) {
  const auto account = storage_.find_user(publisher);
  if (!account) throw Error(Errc::UnknownUser, fmt::format("no user {}", publisher.value));
  if (!account->can_publish_app)
    throw Error(Errc::PermissionDenied, "publishing requires the publish_app permission");
  return storage_.insert_application({0, manifest, publisher});
}

std::vector<contract::ApplicationManifest> Registry::search_applications(
    const SearchQuery& query) {
  std::vector<contract::ApplicationManifest> hits;
  for (auto& app : storage_.list_applications())
    if (matches(app.manifest, query)) hits.push_back(std::move(app.manifest));

  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.name != b.name) return a.name < b.name;
    return version_of(a) > version_of(b);
  });
  if (!query.all_versions) {
    // Sorted by name then descending version: keep the first of each name.
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const auto& a, const auto& b) { return a.name == b.name; }),
               hits.end());
  }
  return hits;
}

contract::ApplicationManifest Registry::get_application(std::string_view name,
                                                        std::string_view version) {
  auto app = storage_.find_application(name, version);
  if (!app) throw Error(Errc::NotFound, fmt::format("no application {} {}", name, version));
  return std::move(app->manifest);
}

contract::SourceRef Registry::get_application_source(std::string_view name,
                                                     std::string_view version) {
  return get_application(name, version).source;
}

ShareReceipt Registry::store_share(ByteView blob, UserId owner, Timestamp now) {
  if (!crypto::SealedBlob::is_well_formed(blob))
    throw Error(Errc::MalformedBlob,
                "blob must be salt(16) || iv(16) || ciphertext with whole 16-byte blocks");
  if (!storage_.find_user(owner))
    throw Error(Errc::Unauthenticated, "share owner is not a known user");
  SharedResultRecord record{{}, Bytes(blob.begin(), blob.end()), owner, now,
                            now + options_.share_ttl};
  do {
    record.token = random_token(kShareTokenBytes);
  } while (!storage_.insert_share(record));
  return {record.token, record.expires_at};
}

Bytes Registry::fetch_share(std::string_view token, Timestamp now) {
  auto record = storage_.find_share(token);
  if (!record) throw Error(Errc::NotFound, "no such share");
  if (now >= record->expires_at) {
    storage_.delete_share(token);
    throw Error(Errc::NotFound, "no such share");
  }
  return std::move(record->blob);
}

std::size_t Registry::purge_expired_shares(Timestamp now) { return storage_.purge_shares(now); }

PermissionRequest Registry::request_permission(UserId user_id, Permission kind, Timestamp now) {
  user(user_id);
  PermissionRequest request{0, user_id, kind, RequestStatus::Pending, now};
  request.id = storage_.insert_request(request);
  return request;
}

UserAccount Registry::require_admin(UserId admin) {
  auto account = storage_.find_user(admin);
  if (!account || !account->is_admin)
    throw Error(Errc::NotAdmin, "only administrators can resolve permission requests");
  return *account;
}

UserAccount Registry::grant_permission(UserId admin, std::int64_t request_id) {
  require_admin(admin);
  const auto request = storage_.find_request(request_id);
  if (!request) throw Error(Errc::NoSuchRequest, fmt::format("no request {}", request_id));
  storage_.resolve_request(request_id, RequestStatus::Granted);
  return user(request->user);
}

PermissionRequest Registry::deny_permission(UserId admin, std::int64_t request_id) {
  require_admin(admin);
  storage_.resolve_request(request_id, RequestStatus::Denied);
  return *storage_.find_request(request_id);
}

std::vector<PermissionRequest> Registry::pending_requests() {
  return storage_.list_requests(RequestStatus::Pending);
}

std::string Registry::put_sample_dataset(const DatasetUpload& upload, UserId uploader) {
  const auto account = storage_.find_user(uploader);
  if (!account) throw Error(Errc::UnknownUser, fmt::format("no user {}", uploader.value));
  if (!account->can_upload_data)
    throw Error(Errc::PermissionDenied, "uploading requires the upload_data permission");
  if (upload.name.empty()) throw Error(Errc::InvalidArgument, "dataset name must not be empty");
  SampleDataset dataset{{{}, upload.name, upload.description, upload.content.size(), uploader},
                        upload.content};
  do {
    dataset.summary.id = random_token(kDatasetIdBytes);
  } while (!storage_.insert_dataset(dataset));
  return dataset.summary.id;
}

std::vector<DatasetSummary> Registry::list_sample_datasets() { return storage_.list_datasets(); }

SampleDataset Registry::get_sample_dataset(std::string_view id) {
  auto dataset = storage_.find_dataset(id);
  if (!dataset) throw Error(Errc::NotFound, "no such dataset");
  return std::move(*dataset);
}

}  // namespace appnest::registry
