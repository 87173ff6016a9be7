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

#include <memory>
#include <mutex>
#include <string>

#include "appnest/registry/storage.hpp"

struct sqlite3;

namespace appnest::registry {

// Single-file SQLite store. Pass ":memory:" for a private in-memory
// database. One connection, serialized by a mutex.
class SqliteStorage final : public Storage {
 public:
  explicit SqliteStorage(const std::string& path);
  ~SqliteStorage() override;
  SqliteStorage(const SqliteStorage&) = delete;
  SqliteStorage& operator=(const SqliteStorage&) = delete;

  UserId insert_user(const UserAccount& account) override;
  std::optional<UserAccount> find_user(UserId id) override;
  std::optional<UserAccount> find_user_by_handle(std::string_view handle) override;
  void set_admin(UserId id, bool is_admin) override;

  std::int64_t insert_request(const PermissionRequest& request) override;
  std::optional<PermissionRequest> find_request(std::int64_t id) override;
  std::vector<PermissionRequest> list_requests(std::optional<RequestStatus> status) override;
  void resolve_request(std::int64_t id, RequestStatus outcome) override;

  std::int64_t insert_application(const StoredApplication& app) override;
  std::vector<StoredApplication> list_applications() override;
  std::optional<StoredApplication> find_application(std::string_view name,
                                                    std::string_view version) override;

  bool insert_share(const SharedResultRecord& record) override;
  std::optional<SharedResultRecord> find_share(std::string_view token) override;
  void delete_share(std::string_view token) override;
  std::size_t purge_shares(Timestamp now) override;

  bool insert_dataset(const SampleDataset& dataset) override;
  std::vector<DatasetSummary> list_datasets() override;
  std::optional<SampleDataset> find_dataset(std::string_view id) override;

 private:
  void exec(const char* sql);

  std::mutex mutex_;
  sqlite3* db_ = nullptr;
};

}  // namespace appnest::registry
