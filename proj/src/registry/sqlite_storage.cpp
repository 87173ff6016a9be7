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

#include "appnest/registry/sqlite_storage.hpp"

#include <sqlite3.h>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "appnest/contract/validate.hpp"
#include "appnest/error.hpp"

namespace appnest::registry {
namespace {

constexpr const char* kSchema = R"sql(
PRAGMA foreign_keys = ON;
CREATE TABLE IF NOT EXISTS users (
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  handle TEXT NOT NULL UNIQUE,
  credential TEXT NOT NULL,
  can_publish_app INTEGER NOT NULL DEFAULT 0,
  can_upload_data INTEGER NOT NULL DEFAULT 0,
  is_admin INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS permission_requests (
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  user_id INTEGER NOT NULL REFERENCES users(id),
  kind TEXT NOT NULL,
  status TEXT NOT NULL,
  created_at INTEGER NOT NULL
);
CREATE UNIQUE INDEX IF NOT EXISTS one_pending_request
  ON permission_requests(user_id, kind) WHERE status = 'pending';
CREATE TABLE IF NOT EXISTS applications (
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  name TEXT NOT NULL,
  version TEXT NOT NULL,
  manifest TEXT NOT NULL,
  publisher INTEGER NOT NULL REFERENCES users(id),
  UNIQUE(name, version)
);
CREATE TABLE IF NOT EXISTS shares (
  token TEXT PRIMARY KEY,
  blob BLOB NOT NULL,
  owner INTEGER NOT NULL REFERENCES users(id),
  created_at INTEGER NOT NULL,
  expires_at INTEGER NOT NULL CHECK (expires_at > created_at)
);
CREATE TABLE IF NOT EXISTS datasets (
  id TEXT PRIMARY KEY,
  name TEXT NOT NULL,
  description TEXT NOT NULL,
  content BLOB NOT NULL,
  byte_size INTEGER NOT NULL,
  uploader INTEGER NOT NULL REFERENCES users(id)
);
)sql";

// Prepared statement with positional binding. Finalized on scope exit.
class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK)
      throw Error(Errc::StorageError, fmt::format("prepare failed: {}", sqlite3_errmsg(db)));
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, std::int64_t v) {
    sqlite3_bind_int64(stmt_, i, v);
    return *this;
  }
  Statement& bind(int i, std::string_view v) {
    sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Statement& bind_blob(int i, ByteView v) {
    // Zero-length blobs still need a non-null pointer to stay BLOB, not NULL.
    static const std::uint8_t empty = 0;
    sqlite3_bind_blob64(stmt_, i, v.empty() ? &empty : v.data(), v.size(), SQLITE_TRANSIENT);
    return *this;
  }

  // True while a row is available.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    last_error_ = sqlite3_extended_errcode(db_);
    if ((last_error_ & 0xFF) == SQLITE_CONSTRAINT) throw ConstraintViolation{};
    throw Error(Errc::StorageError, fmt::format("step failed: {}", sqlite3_errmsg(db_)));
  }

  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }
  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p),
                           static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  Bytes blob(int col) const {
    const auto* p = static_cast<const std::uint8_t*>(sqlite3_column_blob(stmt_, col));
    const auto n = static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col));
    return p ? Bytes(p, p + n) : Bytes();
  }

  struct ConstraintViolation {};

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
  int last_error_ = 0;
};

std::string status_label(RequestStatus s) { return std::string(to_label(s)); }

RequestStatus status_from_label(std::string_view s) {
  if (s == "granted") return RequestStatus::Granted;
  if (s == "denied") return RequestStatus::Denied;
  return RequestStatus::Pending;
}

UserAccount read_user(const Statement& st) {
  return {UserId{st.integer(0)}, st.text(1), st.text(2), st.integer(3) != 0,
          st.integer(4) != 0, st.integer(5) != 0};
}

PermissionRequest read_request(const Statement& st) {
  return {st.integer(0), UserId{st.integer(1)},
          permission_from_label(st.text(2)).value_or(Permission::PublishApp),
          status_from_label(st.text(3)), from_unix(st.integer(4))};
}

StoredApplication read_application(const Statement& st) {
  return {st.integer(0),
          contract::manifest_from_stored_json(nlohmann::json::parse(st.text(1))),
          UserId{st.integer(2)}};
}

constexpr const char* kUserColumns =
    "SELECT id, handle, credential, can_publish_app, can_upload_data, is_admin FROM users ";

}  // namespace

SqliteStorage::SqliteStorage(const std::string& path) {
  if (sqlite3_open_v2(path.c_str(), &db_,
                      SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string message = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw Error(Errc::StorageError, fmt::format("cannot open {}: {}", path, message));
  }
  sqlite3_busy_timeout(db_, 5000);
  exec(kSchema);
}

SqliteStorage::~SqliteStorage() { sqlite3_close(db_); }

void SqliteStorage::exec(const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err ? err : "unknown error";
    sqlite3_free(err);
    throw Error(Errc::StorageError, message);
  }
}

UserId SqliteStorage::insert_user(const UserAccount& a) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "INSERT INTO users(handle, credential, can_publish_app, can_upload_data, "
               "is_admin) VALUES (?, ?, ?, ?, ?)");
  st.bind(1, a.handle).bind(2, a.credential_hash).bind(3, std::int64_t{a.can_publish_app});
  st.bind(4, std::int64_t{a.can_upload_data}).bind(5, std::int64_t{a.is_admin});
  try {
    st.step();
  } catch (const Statement::ConstraintViolation&) {
    throw Error(Errc::DuplicateHandle, fmt::format("handle \"{}\" is taken", a.handle));
  }
  return UserId{sqlite3_last_insert_rowid(db_)};
}

std::optional<UserAccount> SqliteStorage::find_user(UserId id) {
  std::lock_guard lock(mutex_);
  Statement st(db_, (std::string(kUserColumns) + "WHERE id = ?").c_str());
  st.bind(1, id.value);
  if (!st.step()) return std::nullopt;
  return read_user(st);
}

std::optional<UserAccount> SqliteStorage::find_user_by_handle(std::string_view handle) {
  std::lock_guard lock(mutex_);
  Statement st(db_, (std::string(kUserColumns) + "WHERE handle = ?").c_str());
  st.bind(1, handle);
  if (!st.step()) return std::nullopt;
  return read_user(st);
}

void SqliteStorage::set_admin(UserId id, bool is_admin) {
  std::lock_guard lock(mutex_);
  Statement st(db_, "UPDATE users SET is_admin = ? WHERE id = ?");
  st.bind(1, std::int64_t{is_admin}).bind(2, id.value);
  st.step();
}

std::int64_t SqliteStorage::insert_request(const PermissionRequest& r) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "INSERT INTO permission_requests(user_id, kind, status, created_at) "
               "VALUES (?, ?, ?, ?)");
  st.bind(1, r.user.value).bind(2, to_label(r.kind)).bind(3, status_label(r.status));
  st.bind(4, to_unix(r.created_at));
  try {
    st.step();
  } catch (const Statement::ConstraintViolation&) {
    throw Error(Errc::DuplicatePending, "a request of this kind is already pending");
  }
  return sqlite3_last_insert_rowid(db_);
}

std::optional<PermissionRequest> SqliteStorage::find_request(std::int64_t id) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "SELECT id, user_id, kind, status, created_at FROM permission_requests "
               "WHERE id = ?");
  st.bind(1, id);
  if (!st.step()) return std::nullopt;
  return read_request(st);
}

std::vector<PermissionRequest> SqliteStorage::list_requests(std::optional<RequestStatus> status) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "SELECT id, user_id, kind, status, created_at FROM permission_requests "
               "WHERE ?1 IS NULL OR status = ?1 ORDER BY id");
  if (status) st.bind(1, status_label(*status));
  std::vector<PermissionRequest> out;
  while (st.step()) out.push_back(read_request(st));
  return out;
}

void SqliteStorage::resolve_request(std::int64_t id, RequestStatus outcome) {
  std::lock_guard lock(mutex_);
  exec("BEGIN IMMEDIATE");
  try {
    Statement find(db_,
                   "SELECT user_id, kind FROM permission_requests WHERE id = ? AND "
                   "status = 'pending'");
    find.bind(1, id);
    if (!find.step()) throw Error(Errc::NoSuchRequest, fmt::format("no pending request {}", id));
    const auto user = find.integer(0);
    const auto kind = permission_from_label(find.text(1));

    Statement update(db_, "UPDATE permission_requests SET status = ? WHERE id = ?");
    update.bind(1, status_label(outcome)).bind(2, id);
    update.step();
    if (outcome == RequestStatus::Granted && kind) {
      Statement flag(db_, *kind == Permission::PublishApp
                              ? "UPDATE users SET can_publish_app = 1 WHERE id = ?"
                              : "UPDATE users SET can_upload_data = 1 WHERE id = ?");
      flag.bind(1, user);
      flag.step();
    }
    exec("COMMIT");
  } catch (...) {
    exec("ROLLBACK");
    throw;
  }
}

std::int64_t SqliteStorage::insert_application(const StoredApplication& app) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "INSERT INTO applications(name, version, manifest, publisher) VALUES (?, ?, ?, ?)");
  st.bind(1, app.manifest.name).bind(2, app.manifest.version);
  st.bind(3, contract::to_json(app.manifest).dump()).bind(4, app.publisher.value);
  try {
    st.step();
  } catch (const Statement::ConstraintViolation&) {
    throw Error(Errc::DuplicateNameVersion,
                fmt::format("{} {} is already published", app.manifest.name,
                            app.manifest.version));
  }
  return sqlite3_last_insert_rowid(db_);
}

std::vector<StoredApplication> SqliteStorage::list_applications() {
  std::lock_guard lock(mutex_);
  Statement st(db_, "SELECT id, manifest, publisher FROM applications ORDER BY id");
  std::vector<StoredApplication> out;
  while (st.step()) out.push_back(read_application(st));
  return out;
}

std::optional<StoredApplication> SqliteStorage::find_application(std::string_view name,
                                                                 std::string_view version) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "SELECT id, manifest, publisher FROM applications WHERE name = ? AND version = ?");
  st.bind(1, name).bind(2, version);
  if (!st.step()) return std::nullopt;
  return read_application(st);
}

bool SqliteStorage::insert_share(const SharedResultRecord& r) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "INSERT INTO shares(token, blob, owner, created_at, expires_at) VALUES (?, ?, ?, ?, ?)");
  st.bind(1, r.token).bind_blob(2, r.blob).bind(3, r.owner.value);
  st.bind(4, to_unix(r.created_at)).bind(5, to_unix(r.expires_at));
  try {
    st.step();
  } catch (const Statement::ConstraintViolation&) {
    return false;
  }
  return true;
}

std::optional<SharedResultRecord> SqliteStorage::find_share(std::string_view token) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "SELECT token, blob, owner, created_at, expires_at FROM shares WHERE token = ?");
  st.bind(1, token);
  if (!st.step()) return std::nullopt;
  return SharedResultRecord{st.text(0), st.blob(1), UserId{st.integer(2)},
                            from_unix(st.integer(3)), from_unix(st.integer(4))};
}

void SqliteStorage::delete_share(std::string_view token) {
  std::lock_guard lock(mutex_);
  Statement st(db_, "DELETE FROM shares WHERE token = ?");
  st.bind(1, token);
  st.step();
}

std::size_t SqliteStorage::purge_shares(Timestamp now) {
  std::lock_guard lock(mutex_);
  Statement st(db_, "DELETE FROM shares WHERE expires_at <= ?");
  st.bind(1, to_unix(now));
  st.step();
  return static_cast<std::size_t>(sqlite3_changes(db_));
}

bool SqliteStorage::insert_dataset(const SampleDataset& d) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "INSERT INTO datasets(id, name, description, content, byte_size, uploader) "
               "VALUES (?, ?, ?, ?, ?, ?)");
  st.bind(1, d.summary.id).bind(2, d.summary.name).bind(3, d.summary.description);
  st.bind_blob(4, d.content).bind(5, static_cast<std::int64_t>(d.content.size()));
  st.bind(6, d.summary.uploader.value);
  try {
    st.step();
  } catch (const Statement::ConstraintViolation&) {
    return false;
  }
  return true;
}

std::vector<DatasetSummary> SqliteStorage::list_datasets() {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "SELECT id, name, description, byte_size, uploader FROM datasets ORDER BY rowid");
  std::vector<DatasetSummary> out;
  while (st.step())
    out.push_back({st.text(0), st.text(1), st.text(2),
                   static_cast<std::uint64_t>(st.integer(3)), UserId{st.integer(4)}});
  return out;
}

std::optional<SampleDataset> SqliteStorage::find_dataset(std::string_view id) {
  std::lock_guard lock(mutex_);
  Statement st(db_,
               "SELECT id, name, description, byte_size, uploader, content FROM datasets "
               "WHERE id = ?");
  st.bind(1, id);
  if (!st.step()) return std::nullopt;
  return SampleDataset{{st.text(0), st.text(1), st.text(2),
                        static_cast<std::uint64_t>(st.integer(3)), UserId{st.integer(4)}},
                       st.blob(5)};
}

}  // namespace appnest::registry
