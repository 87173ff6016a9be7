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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "appnest/bytes.hpp"
#include "appnest/clock.hpp"
#include "appnest/contract/manifest.hpp"

namespace appnest::registry {

struct UserId {
  std::int64_t value = 0;
  auto operator<=>(const UserId&) const = default;
};

enum class Permission { PublishApp, UploadData };
enum class RequestStatus { Pending, Granted, Denied };

std::string_view to_label(Permission p) noexcept;
std::string_view to_label(RequestStatus s) noexcept;
std::optional<Permission> permission_from_label(std::string_view s) noexcept;

struct UserAccount {
  UserId id;
  std::string handle;
  std::string credential_hash;  // "pbkdf2-sha256$iterations$salt$hash"
  bool can_publish_app = false;
  bool can_upload_data = false;
  bool is_admin = false;
};

struct PermissionRequest {
  std::int64_t id = 0;
  UserId user;
  Permission kind = Permission::PublishApp;
  RequestStatus status = RequestStatus::Pending;
  Timestamp created_at;
};

struct StoredApplication {
  std::int64_t id = 0;
  contract::ApplicationManifest manifest;
  UserId publisher;
};

struct SharedResultRecord {
  std::string token;
  Bytes blob;
  UserId owner;
  Timestamp created_at;
  Timestamp expires_at;
};

struct DatasetSummary {
  std::string id;
  std::string name;
  std::string description;
  std::uint64_t byte_size = 0;
  UserId uploader;
};

struct SampleDataset {
  DatasetSummary summary;
  Bytes content;
};

}  // namespace appnest::registry
