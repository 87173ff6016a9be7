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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "appnest/clock.hpp"
#include "appnest/contract/seed_corpus.hpp"
#include "appnest/contract/validate.hpp"
#include "appnest/crypto/encoding.hpp"
#include "appnest/error.hpp"
#include "appnest/registry/registry.hpp"
#include "appnest/registry/sqlite_storage.hpp"

namespace appnest::registry {
namespace {

using namespace std::chrono_literals;

template <typename F>
Errc error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no appnest::Error thrown";
  return Errc::InvalidArgument;
}

contract::ApplicationManifest app(std::string name, std::string version,
                                  std::vector<std::string> tags = {"r"}) {
  contract::ApplicationManifest m;
  m.name = std::move(name);
  m.version = std::move(version);
  m.runtime = contract::Runtime::R;
  m.short_description = "Example application " + m.name;
  m.tags = std::move(tags);
  m.entry_point.function_name = "run";
  m.source = {contract::SourceRef::Kind::Inline, "run <- function() '<p/>'\n"};
  return m;
}

class RegistryTest : public ::testing::Test {
 protected:
  RegistryTest() : registry(storage, randomness, options()) {}

  static RegistryOptions options() {
    RegistryOptions o;
    o.credential_iterations = 1000;
    return o;
  }

  UserAccount publisher(const std::string& handle = "dev") {
    const auto u = registry.create_user(handle, "password");
    const auto op = registry.ensure_operator();
    registry.grant_permission(op.id,
                              registry.request_permission(u.id, Permission::PublishApp, clock.now()).id);
    return registry.user(u.id);
  }

  void seed() {
    const auto dev = publisher("seeder");
    const contract::OriginWhitelist w("https://appnest.example");
    for (const auto& doc : contract::seed_manifest_documents()) {
      registry.put_application(
          std::get<contract::ApplicationManifest>(contract::validate_manifest(doc, w)), dev.id);
    }
  }

  static std::set<std::string> names(const std::vector<contract::ApplicationManifest>& ms) {
    std::set<std::string> out;
    for (const auto& m : ms) out.insert(m.name);
    return out;
  }

  ManualClock clock;
  SqliteStorage storage{":memory:"};
  crypto::SeededRandom randomness{17};
  Registry registry;
};

TEST_F(RegistryTest, NewAccountsStartWithoutPermissions) {
  const auto u = registry.create_user("alice", "hunter22");
  EXPECT_FALSE(u.can_publish_app);
  EXPECT_FALSE(u.can_upload_data);
  EXPECT_FALSE(u.is_admin);
  EXPECT_EQ(u.credential_hash.find("hunter22"), std::string::npos);
  EXPECT_EQ(u.credential_hash.find(crypto::base64_encode(as_bytes("hunter22"))), std::string::npos);
  EXPECT_EQ(u.credential_hash.find(crypto::to_hex(as_bytes("hunter22"))), std::string::npos);
  EXPECT_TRUE(registry.authenticate("alice", "hunter22").has_value());
  EXPECT_FALSE(registry.authenticate("alice", "hunter23").has_value());
  EXPECT_FALSE(registry.authenticate("nobody", "hunter22").has_value());
}

TEST_F(RegistryTest, HandlesAreUniqueAndOperatorIsReserved) {
  registry.create_user("alice", "pw");
  EXPECT_EQ(error_code_of([&] { registry.create_user("alice", "pw2"); }), Errc::DuplicateHandle);
  EXPECT_EQ(error_code_of([&] { registry.create_user("operator", "pw"); }), Errc::DuplicateHandle);
  const auto op = registry.ensure_operator();
  EXPECT_TRUE(op.is_admin);
  EXPECT_FALSE(registry.authenticate("operator", "!locked").has_value());
  EXPECT_EQ(registry.ensure_operator().id, op.id);
}

TEST_F(RegistryTest, CredentialHashFormat) {
  crypto::SeededRandom r(1);
  const auto stored = hash_credential("pw", r, 1000);
  EXPECT_TRUE(stored.starts_with("pbkdf2-sha256$1000$"));
  EXPECT_TRUE(verify_credential("pw", stored));
  EXPECT_FALSE(verify_credential("pW", stored));
  EXPECT_FALSE(verify_credential("pw", "garbage"));
  EXPECT_NE(hash_credential("pw", r, 1000), stored);
}

TEST_F(RegistryTest, DistinctVersionsAreSeparateRecords) {
  const auto dev = publisher();
  registry.put_application(app("netMUG", "1.0.0"), dev.id);
  registry.put_application(app("netMUG", "1.1.0"), dev.id);
  const auto all = registry.search_applications({std::nullopt, std::nullopt, true});
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].version, "1.1.0");
  EXPECT_EQ(all[1].version, "1.0.0");
  const auto latest = registry.search_applications({});
  ASSERT_EQ(latest.size(), 1u);
  EXPECT_EQ(latest[0].version, "1.1.0");
}

TEST_F(RegistryTest, LatestVersionUsesNumericOrder) {
  const auto dev = publisher();
  registry.put_application(app("x", "1.10"), dev.id);
  registry.put_application(app("x", "1.9"), dev.id);
  EXPECT_EQ(registry.search_applications({}).at(0).version, "1.10");
}

TEST_F(RegistryTest, DuplicateNameVersionRejected) {
  const auto dev = publisher();
  registry.put_application(app("demo", "1.0.0"), dev.id);
  EXPECT_EQ(error_code_of([&] { registry.put_application(app("demo", "1.0.0"), dev.id); }),
            Errc::DuplicateNameVersion);
  auto other_runtime = app("demo", "1.0.0");
  other_runtime.runtime = contract::Runtime::Python;
  EXPECT_EQ(error_code_of([&] { registry.put_application(other_runtime, dev.id); }),
            Errc::DuplicateNameVersion);
}

TEST_F(RegistryTest, PublishingNeedsPermission) {
  const auto u = registry.create_user("nopub", "pw");
  EXPECT_EQ(error_code_of([&] { registry.put_application(app("a", "1"), u.id); }),
            Errc::PermissionDenied);
  EXPECT_EQ(error_code_of([&] { registry.put_application(app("a", "1"), UserId{999}); }),
            Errc::UnknownUser);
}

TEST_F(RegistryTest, SearchByRuntimeTag) {
  seed();
  const auto r = names(registry.search_applications({"r", std::nullopt, false}));
  for (const char* n : {"netANOVA", "netMUG", "GMIC", "Demo"}) EXPECT_TRUE(r.contains(n)) << n;
  EXPECT_FALSE(r.contains("2D tSNE"));
  const auto py = names(registry.search_applications({"PYTHON", std::nullopt, false}));
  EXPECT_TRUE(py.contains("2D tSNE"));
  EXPECT_FALSE(py.contains("Demo"));
}

TEST_F(RegistryTest, SearchByText) {
  seed();
  const auto pca = names(registry.search_applications({std::nullopt, "PCA", false}));
  for (const char* n : {"2D PCA", "3D PCA", "PCA loadings"}) EXPECT_TRUE(pca.contains(n)) << n;
  EXPECT_EQ(names(registry.search_applications({std::nullopt, "tsne", false})),
            std::set<std::string>{"2D tSNE"});
  EXPECT_TRUE(registry.search_applications({"nonexistent", std::nullopt, false}).empty());
  EXPECT_EQ(registry.search_applications({}).size(), contract::seed_manifest_documents().size());
}

TEST_F(RegistryTest, ResultsSortedByName) {
  seed();
  const auto all = registry.search_applications({});
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(),
                             [](const auto& a, const auto& b) { return a.name < b.name; }));
}

// Filters only ever narrow the result set.
TEST_F(RegistryTest, FiltersOnlyNarrow) {
  seed();
  const auto everything = names(registry.search_applications({}));
  const std::vector<std::optional<std::string>> tags{std::nullopt, "r", "python", "pca",
                                                     "classification", "zzz"};
  const std::vector<std::optional<std::string>> texts{std::nullopt, "PCA", "net", "plot", "a",
                                                      "", "zzz"};
  for (const auto& t : tags) {
    const auto by_tag = names(registry.search_applications({t, std::nullopt, false}));
    EXPECT_TRUE(std::includes(everything.begin(), everything.end(), by_tag.begin(), by_tag.end()));
    for (const auto& q : texts) {
      const auto both = names(registry.search_applications({t, q, false}));
      EXPECT_TRUE(std::includes(by_tag.begin(), by_tag.end(), both.begin(), both.end()))
          << t.value_or("-") << " / " << q.value_or("-");
    }
  }
}

TEST_F(RegistryTest, SourceRetrieval) {
  const auto dev = publisher();
  auto inline_app = app("inl", "1.0");
  inline_app.source.value = "run <- function() {\n  '\xC3\xA9\\t<b>'\n}\r\n";
  registry.put_application(inline_app, dev.id);
  auto url_app = app("url", "1.0");
  url_app.source = {contract::SourceRef::Kind::Url,
                    "https://raw.githubusercontent.com/o/r/main/app.R?x=1"};
  registry.put_application(url_app, dev.id);
  EXPECT_EQ(registry.get_application_source("inl", "1.0"), inline_app.source);
  EXPECT_EQ(registry.get_application_source("url", "1.0"), url_app.source);
  EXPECT_EQ(error_code_of([&] { (void)registry.get_application_source("inl", "2.0"); }),
            Errc::NotFound);
  EXPECT_EQ(registry.get_application("inl", "1.0"), inline_app);
}

Bytes blob_of(std::size_t size, std::uint8_t fill = 0xAB) { return Bytes(size, fill); }

TEST_F(RegistryTest, ShareRoundTripAndExpiry) {
  const auto u = registry.create_user("sharer", "pw");
  const auto blob = blob_of(80);
  const auto receipt = registry.store_share(blob, u.id, clock.now());
  EXPECT_EQ(receipt.expires_at, clock.now() + std::chrono::hours(24 * 7));
  EXPECT_EQ(registry.fetch_share(receipt.token, clock.now()), blob);
  clock.advance(std::chrono::hours(24 * 7) - 1s);
  EXPECT_EQ(registry.fetch_share(receipt.token, clock.now()), blob);
  clock.advance(1s);
  EXPECT_EQ(error_code_of([&] { (void)registry.fetch_share(receipt.token, clock.now()); }),
            Errc::NotFound);
  // Once gone, always gone, even for a later clock reading.
  clock.advance(1h);
  EXPECT_EQ(error_code_of([&] { (void)registry.fetch_share(receipt.token, clock.now()); }),
            Errc::NotFound);
}

TEST_F(RegistryTest, ShareTokensAreFreshAndUrlSafe) {
  const auto u = registry.create_user("sharer", "pw");
  const auto a = registry.store_share(blob_of(48), u.id, clock.now());
  const auto b = registry.store_share(blob_of(48), u.id, clock.now());
  EXPECT_NE(a.token, b.token);
  const auto raw = crypto::base64url_decode(a.token);
  ASSERT_TRUE(raw.has_value());
  EXPECT_EQ(raw->size(), 16u);
}

TEST_F(RegistryTest, ShareRejectsMalformedBlobAndUnknownOwner) {
  const auto u = registry.create_user("sharer", "pw");
  EXPECT_EQ(error_code_of([&] { registry.store_share(blob_of(47), u.id, clock.now()); }),
            Errc::MalformedBlob);
  EXPECT_EQ(error_code_of([&] { registry.store_share(blob_of(50), u.id, clock.now()); }),
            Errc::MalformedBlob);
  EXPECT_EQ(error_code_of([&] { registry.store_share(blob_of(48), UserId{4242}, clock.now()); }),
            Errc::Unauthenticated);
  EXPECT_EQ(error_code_of([&] { (void)registry.fetch_share("nope", clock.now()); }),
            Errc::NotFound);
}

TEST_F(RegistryTest, PurgeRemovesOnlyExpired) {
  const auto u = registry.create_user("sharer", "pw");
  const auto old_share = registry.store_share(blob_of(48), u.id, clock.now());
  clock.advance(std::chrono::hours(24 * 4));
  const auto new_share = registry.store_share(blob_of(64), u.id, clock.now());
  clock.advance(std::chrono::hours(24 * 4));
  EXPECT_EQ(registry.purge_expired_shares(clock.now()), 1u);
  EXPECT_EQ(registry.fetch_share(new_share.token, clock.now()).size(), 64u);
  EXPECT_EQ(error_code_of([&] { (void)registry.fetch_share(old_share.token, clock.now()); }),
            Errc::NotFound);
}

TEST_F(RegistryTest, PermissionWorkflow) {
  const auto u = registry.create_user("provider", "pw");
  const auto admin = registry.ensure_operator();
  const auto req = registry.request_permission(u.id, Permission::UploadData, clock.now());
  EXPECT_EQ(req.status, RequestStatus::Pending);
  EXPECT_EQ(error_code_of([&] { registry.request_permission(u.id, Permission::UploadData, clock.now()); }),
            Errc::DuplicatePending);
  // A pending request for the other kind is independent.
  const auto other = registry.request_permission(u.id, Permission::PublishApp, clock.now());
  EXPECT_EQ(error_code_of([&] { registry.grant_permission(u.id, req.id); }), Errc::NotAdmin);
  EXPECT_FALSE(registry.user(u.id).can_upload_data);
  const auto granted = registry.grant_permission(admin.id, req.id);
  EXPECT_TRUE(granted.can_upload_data);
  EXPECT_FALSE(granted.can_publish_app);
  EXPECT_EQ(error_code_of([&] { registry.grant_permission(admin.id, req.id); }),
            Errc::NoSuchRequest);
  EXPECT_EQ(error_code_of([&] { registry.grant_permission(admin.id, 9999); }), Errc::NoSuchRequest);
  const auto denied = registry.deny_permission(admin.id, other.id);
  EXPECT_EQ(denied.status, RequestStatus::Denied);
  EXPECT_FALSE(registry.user(u.id).can_publish_app);
  EXPECT_TRUE(registry.pending_requests().empty());
  // After a denial a new request may be filed.
  registry.request_permission(u.id, Permission::PublishApp, clock.now());
  EXPECT_EQ(registry.pending_requests().size(), 1u);
}

TEST_F(RegistryTest, SampleDatasets) {
  const auto u = registry.create_user("provider", "pw");
  EXPECT_EQ(error_code_of([&] { registry.put_sample_dataset({"d", "", Bytes(4)}, u.id); }),
            Errc::PermissionDenied);
  const auto op = registry.ensure_operator();
  registry.grant_permission(op.id,
                            registry.request_permission(u.id, Permission::UploadData, clock.now()).id);
  EXPECT_TRUE(registry.list_sample_datasets().empty());
  Bytes kib(1024);
  for (std::size_t i = 0; i < kib.size(); ++i) kib[i] = static_cast<std::uint8_t>(i * 7);
  const auto id1 = registry.put_sample_dataset({"expr.csv", "expression matrix", kib}, u.id);
  const auto id2 = registry.put_sample_dataset({"tiny.csv", "", Bytes{1, 2, 3}}, u.id);
  EXPECT_NE(id1, id2);
  EXPECT_EQ(registry.get_sample_dataset(id1).content, kib);
  const auto list = registry.list_sample_datasets();
  ASSERT_EQ(list.size(), 2u);
  std::map<std::string, std::uint64_t> sizes;
  for (const auto& d : list) sizes[d.name] = d.byte_size;
  EXPECT_EQ(sizes["expr.csv"], 1024u);
  EXPECT_EQ(sizes["tiny.csv"], 3u);
  EXPECT_EQ(error_code_of([&] { (void)registry.get_sample_dataset("missing"); }), Errc::NotFound);
}

TEST(SqliteStorage, PersistsAcrossConnections) {
  const auto path = std::filesystem::temp_directory_path() / "appnest_persist_test.db";
  std::filesystem::remove(path);
  {
    SqliteStorage storage(path.string());
    crypto::SeededRandom r(1);
    Registry reg(storage, r, {std::chrono::hours(1), 1000});
    reg.create_user("keeper", "pw");
  }
  {
    SqliteStorage storage(path.string());
    crypto::SeededRandom r(2);
    Registry reg(storage, r, {std::chrono::hours(1), 1000});
    EXPECT_TRUE(reg.authenticate("keeper", "pw").has_value());
  }
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace appnest::registry
