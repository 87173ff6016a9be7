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

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "appnest/contract/manifest.hpp"
#include "appnest/crypto/random.hpp"
#include "appnest/registry/storage.hpp"

namespace appnest::registry {

struct RegistryOptions {
  std::chrono::seconds share_ttl = std::chrono::hours(24 * 7);
  unsigned credential_iterations = 100'000;
};

struct SearchQuery {
  std::optional<std::string> tag;
  std::optional<std::string> text;
  bool all_versions = false;
};

struct ShareReceipt {
  std::string token;
  Timestamp expires_at;
};

struct DatasetUpload {
  std::string name;
  std::string description;
  Bytes content;
};

// Handle reserved for the built-in administrator used by the command line.
inline constexpr std::string_view kOperatorHandle = "operator";

// Business rules over a Storage: permissions, uniqueness, share expiry and
// capability tokens. Time is always passed in; randomness is injected.
class Registry {
 public:
  Registry(Storage& storage, crypto::RandomSource& randomness,
           RegistryOptions options = {});

  [[nodiscard]] const RegistryOptions& options() const noexcept { return options_; }

  // Accounts. New accounts have no permissions and are not admins.
  UserAccount create_user(std::string_view handle, std::string_view password);
  std::optional<UserAccount> authenticate(std::string_view handle,
                                          std::string_view password);
  UserAccount user(UserId id);
  std::optional<UserAccount> find_user(std::string_view handle);
  // Administrator account that cannot log in over HTTP; created on first use.
  UserAccount ensure_operator();

  // Applications.
  std::int64_t put_application(const contract::ApplicationManifest& manifest,
                               UserId publisher);
  std::vector<contract::ApplicationManifest> search_applications(
      const SearchQuery& query);
  contract::ApplicationManifest get_application(std::string_view name,
                                                std::string_view version);
  contract::SourceRef get_application_source(std::string_view name,
                                             std::string_view version);

  // Sealed shares. The blob is checked structurally and stored verbatim.
  ShareReceipt store_share(ByteView blob, UserId owner, Timestamp now);
  Bytes fetch_share(std::string_view token, Timestamp now);
  std::size_t purge_expired_shares(Timestamp now);

  // Permission workflow.
  PermissionRequest request_permission(UserId user, Permission kind, Timestamp now);
  UserAccount grant_permission(UserId admin, std::int64_t request_id);
  PermissionRequest deny_permission(UserId admin, std::int64_t request_id);
  std::vector<PermissionRequest> pending_requests();

  // Sample datasets.
  std::string put_sample_dataset(const DatasetUpload& upload, UserId uploader);
  std::vector<DatasetSummary> list_sample_datasets();
  SampleDataset get_sample_dataset(std::string_view id);

 private:
  std::string random_token(std::size_t bytes);
  UserAccount require_admin(UserId admin);

  Storage& storage_;
  crypto::RandomSource& randomness_;
  RegistryOptions options_;
};

// Salted, iterated credential hashing (PBKDF2-HMAC-SHA256).
std::string hash_credential(std::string_view password, crypto::RandomSource& randomness,
                            unsigned iterations);
bool verify_credential(std::string_view password, std::string_view stored);

}  // namespace appnest::registry
