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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "appnest/registry/types.hpp"

namespace appnest::registry {

// Raw persistence. Implementations enforce uniqueness constraints and
// atomicity of each call; business rules live in Registry. All methods must
// be callable from several threads.
class Storage {
 public:
  virtual ~Storage() = default;

  // Throws Error{DuplicateHandle}.
  virtual UserId insert_user(const UserAccount& account) = 0;
  virtual std::optional<UserAccount> find_user(UserId id) = 0;
  virtual std::optional<UserAccount> find_user_by_handle(std::string_view handle) = 0;
  virtual void set_admin(UserId id, bool is_admin) = 0;

  // Throws Error{DuplicatePending} when a pending request of the same kind
  // already exists for the user.
  virtual std::int64_t insert_request(const PermissionRequest& request) = 0;
  virtual std::optional<PermissionRequest> find_request(std::int64_t id) = 0;
  virtual std::vector<PermissionRequest> list_requests(std::optional<RequestStatus> status) = 0;
  // Marks a pending request resolved; on Granted also sets the matching
  // permission flag on the requesting user. One transaction. Throws
  // Error{NoSuchRequest} when the request is not pending.
  virtual void resolve_request(std::int64_t id, RequestStatus outcome) = 0;

  // Throws Error{DuplicateNameVersion}.
  virtual std::int64_t insert_application(const StoredApplication& app) = 0;
  virtual std::vector<StoredApplication> list_applications() = 0;
  virtual std::optional<StoredApplication> find_application(std::string_view name,
                                                            std::string_view version) = 0;

  // Returns false when the token already exists.
  virtual bool insert_share(const SharedResultRecord& record) = 0;
  virtual std::optional<SharedResultRecord> find_share(std::string_view token) = 0;
  virtual void delete_share(std::string_view token) = 0;
  // Deletes shares with expires_at <= now; returns how many.
  virtual std::size_t purge_shares(Timestamp now) = 0;

  // Returns false when the id already exists.
  virtual bool insert_dataset(const SampleDataset& dataset) = 0;
  virtual std::vector<DatasetSummary> list_datasets() = 0;
  virtual std::optional<SampleDataset> find_dataset(std::string_view id) = 0;
};

}  // namespace appnest::registry
