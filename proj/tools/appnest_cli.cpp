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

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "appnest/bench/records.hpp"
#include "appnest/bench/workloads.hpp"
#include "appnest/contract/entry_point.hpp"
#include "appnest/contract/seed_corpus.hpp"
#include "appnest/contract/validate.hpp"
#include "appnest/crypto/encoding.hpp"
#include "appnest/crypto/share.hpp"
#include "appnest/error.hpp"
#include "appnest/registry/registry.hpp"
#include "appnest/registry/sqlite_storage.hpp"
#include "appnest/server/api.hpp"
#include "appnest/server/config.hpp"
#include "appnest/server/http_server.hpp"

namespace fs = std::filesystem;
using namespace appnest;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
}

// One trailing newline is not part of the secret.
crypto::Passphrase read_passphrase(const std::string& file) {
  std::string secret;
  if (file.empty() || file == "-") {
    std::getline(std::cin, secret);
  } else {
    const auto raw = read_file(file);
    secret = to_string(raw);
    if (!secret.empty() && secret.back() == '\n') secret.pop_back();
  }
  if (!secret.empty() && secret.back() == '\r') secret.pop_back();
  return crypto::Passphrase(std::move(secret));
}

registry::RegistryOptions registry_options(const server::ServerConfig& config) {
  registry::RegistryOptions options;
  options.share_ttl = config.share_ttl;
  return options;
}

// Files a request when none is pending, then grants it as the operator.
registry::UserAccount grant(registry::Registry& reg, std::string_view handle,
                            registry::Permission kind) {
  const auto op = reg.ensure_operator();
  const auto account = reg.find_user(handle);
  if (!account) throw Error(Errc::UnknownUser, fmt::format("no user \"{}\"", handle));
  const bool has = kind == registry::Permission::PublishApp ? account->can_publish_app
                                                             : account->can_upload_data;
  if (has) return *account;
  std::optional<std::int64_t> request_id;
  for (const auto& r : reg.pending_requests()) {
    if (r.user == account->id && r.kind == kind) request_id = r.id;
  }
  if (!request_id) request_id = reg.request_permission(account->id, kind, SystemClock{}.now()).id;
  return reg.grant_permission(op.id, *request_id);
}

int cmd_serve(server::ServerConfig config) {
  registry::SqliteStorage storage(config.storage_path);
  crypto::SystemRandom randomness;
  SystemClock clock;
  registry::Registry reg(storage, randomness, registry_options(config));
  server::ApiOptions api_options;
  api_options.public_origin = config.public_origin;
  api_options.session_lifetime = config.session_lifetime;
  api_options.share_posts_per_minute = config.share_posts_per_minute;
  server::Api api(reg, clock, randomness, api_options);

  // Signals are taken synchronously by the maintenance thread below.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  server::HttpServer http(api, config);
  const int port = http.bind();
  spdlog::info("listening on {}:{} as {}", config.bind_host, port, config.public_origin);

  std::atomic<bool> done{false};
  std::thread maintenance([&] {
    auto next_purge = std::chrono::steady_clock::now();
    while (!done) {
      if (std::chrono::steady_clock::now() >= next_purge) {
        try {
          if (const auto n = reg.purge_expired_shares(clock.now()); n > 0) {
            spdlog::info("purged {} expired shares", n);
          }
        } catch (const std::exception& e) {
          spdlog::error("share purge failed: {}", e.what());
        }
        next_purge += std::chrono::minutes(1);
      }
      const timespec wait{1, 0};
      if (sigtimedwait(&signals, nullptr, &wait) > 0) {
        spdlog::info("shutting down");
        http.stop();
        return;
      }
    }
  });
  http.run();
  done = true;
  maintenance.join();
  return 0;
}

int cmd_seed(const server::ServerConfig& config) {
  registry::SqliteStorage storage(config.storage_path);
  crypto::SystemRandom randomness;
  registry::Registry reg(storage, randomness, registry_options(config));
  const auto op = grant(reg, registry::kOperatorHandle, registry::Permission::PublishApp);
  const contract::OriginWhitelist whitelist(config.public_origin);
  int published = 0;
  for (const auto& doc : contract::seed_manifest_documents()) {
    auto result = contract::validate_manifest(doc, whitelist);
    if (auto* report = std::get_if<contract::ValidationReport>(&result)) {
      std::cerr << contract::to_json(*report).dump(2) << '\n';
      return kExitFailure;
    }
    const auto& manifest = std::get<contract::ApplicationManifest>(result);
    try {
      reg.put_application(manifest, op.id);
      ++published;
    } catch (const Error& e) {
      if (e.code() != Errc::DuplicateNameVersion) throw;
    }
  }
  std::cout << fmt::format("published {} applications\n", published);
  return 0;
}

int cmd_grant(const server::ServerConfig& config, const std::string& handle,
              const std::string& permission) {
  const auto kind = registry::permission_from_label(permission);
  if (!kind) {
    std::cerr << "permission must be publish_app or upload_data\n";
    return kExitUsage;
  }
  registry::SqliteStorage storage(config.storage_path);
  crypto::SystemRandom randomness;
  registry::Registry reg(storage, randomness, registry_options(config));
  const auto account = grant(reg, handle, *kind);
  std::cout << fmt::format("{}: publish_app={} upload_data={}\n", account.handle,
                           account.can_publish_app, account.can_upload_data);
  return 0;
}

int cmd_validate(const fs::path& file, const std::string& origin) {
  const auto text = to_string(read_file(file));
  const auto result = contract::validate_manifest_text(text, contract::OriginWhitelist(origin));
  if (const auto* report = std::get_if<contract::ValidationReport>(&result)) {
    std::cout << contract::to_json(*report).dump(2) << '\n';
    return kExitFailure;
  }
  const auto& manifest = std::get<contract::ApplicationManifest>(result);
  std::cout << contract::summary_json(manifest).dump(2) << '\n';
  if (manifest.source.kind == contract::SourceRef::Kind::Inline &&
      contract::check_entry_point_presence(manifest, manifest.source.value) ==
          contract::Presence::Missing) {
    std::cerr << fmt::format("warning: no definition of {} found in the inline source\n",
                             manifest.entry_point.function_name);
  }
  return 0;
}

int cmd_seal(const fs::path& in, std::string name, const fs::path& out,
             const std::string& passphrase_file, bool base64) {
  const auto payload = read_file(in);
  if (name.empty()) name = in.filename().string();
  const auto passphrase = read_passphrase(passphrase_file);
  crypto::SystemRandom randomness;
  const auto wire = crypto::seal(payload, name, passphrase, randomness).serialize();
  if (base64) {
    write_file(out, as_bytes(crypto::base64_encode(wire) + "\n"));
  } else {
    write_file(out, wire);
  }
  return 0;
}

int cmd_unseal(const fs::path& in, const fs::path& out_dir, const fs::path& out,
               const std::string& passphrase_file, bool base64) {
  auto wire = read_file(in);
  if (base64) {
    auto text = to_string(wire);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    auto decoded = crypto::base64_decode(text);
    if (!decoded) throw Error(Errc::MalformedBlob, "input is not base64");
    wire = std::move(*decoded);
  }
  const auto passphrase = read_passphrase(passphrase_file);
  const auto opened = crypto::open(ByteView(wire), passphrase);
  fs::path target = out;
  if (target.empty()) {
    if (opened.file_name.empty() || opened.file_name == "." || opened.file_name == "..") {
      throw Error(Errc::IntegrityFailure, "decrypted file name is not usable");
    }
    target = out_dir / opened.file_name;
  }
  write_file(target, opened.payload);
  std::cout << target.string() << '\n';
  return 0;
}

std::vector<std::size_t> default_sizes(bench::WorkloadKind kind) {
  switch (kind) {
    case bench::WorkloadKind::MatMul:
    case bench::WorkloadKind::MatInverse:
      return {64, 128, 256};
    case bench::WorkloadKind::CoinFlips:
    case bench::WorkloadKind::ListSum:
      return {10'000, 100'000, 1'000'000};
  }
  return {};
}

int cmd_bench_run(const std::string& kind_label, std::vector<std::size_t> sizes,
                  std::size_t iterations, std::uint64_t seed, const std::string& env_label,
                  const std::string& kernel_label, std::size_t budget_mb, const fs::path& out) {
  std::vector<bench::WorkloadKind> kinds;
  if (kind_label == "all") {
    if (!sizes.empty()) {
      std::cerr << "--sizes needs a single --kind\n";
      return kExitUsage;
    }
    kinds = {bench::WorkloadKind::MatMul, bench::WorkloadKind::CoinFlips,
             bench::WorkloadKind::MatInverse, bench::WorkloadKind::ListSum};
  } else if (const auto k = bench::workload_from_label(kind_label)) {
    kinds = {*k};
  } else {
    std::cerr << "unknown workload kind " << kind_label << '\n';
    return kExitUsage;
  }

  bench::RunOptions options;
  options.environment_label = env_label;
  options.memory_budget_bytes = budget_mb << 20;
  options.kernels = kernel_label == "auto"
                        ? &bench::kernels::select_kernels()
                        : &bench::kernels::select_kernels(bench::kernels::isa_from_label(kernel_label));

  std::vector<bench::BenchmarkRecord> records;
  for (const auto kind : kinds) {
    const auto these = sizes.empty() ? default_sizes(kind) : sizes;
    auto part = bench::run_sweep(kind, these, iterations, seed, options);
    records.insert(records.end(), part.begin(), part.end());
  }
  bench::emit_csv(out, records);
  std::cout << bench::format_summaries(bench::summarize(records));
  return 0;
}

int cmd_bench_compare(const fs::path& native, const fs::path& sandbox, const fs::path& out) {
  const auto report = bench::compare_environments(native, sandbox);
  const auto text = bench::format_report(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, as_bytes(text));
  }
  for (const auto& c : report.cells) {
    if (c.sandbox_faster) {
      std::cerr << fmt::format("note: sandbox faster than native for {} size {}\n",
                               bench::to_label(c.kind), c.size);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"appnest: application registry, sealed result sharing and sandbox benchmarks"};
  app.require_subcommand(1);
  std::string storage_override;
  app.add_option("--storage", storage_override, "SQLite database path (overrides APPNEST_STORAGE)");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  auto* seed = app.add_subcommand("seed", "Publish the built-in applications");

  auto* admin = app.add_subcommand("admin", "Administrative actions");
  admin->require_subcommand(1);
  std::string grant_user;
  std::string grant_permission;
  auto* admin_grant = admin->add_subcommand("grant", "Grant a permission to a user");
  admin_grant->add_option("user", grant_user)->required();
  admin_grant->add_option("permission", grant_permission, "publish_app or upload_data")->required();

  fs::path manifest_file;
  std::string origin_override;
  auto* validate = app.add_subcommand("validate", "Check a manifest document");
  validate->add_option("manifest", manifest_file)->required()->check(CLI::ExistingFile);
  validate->add_option("--origin", origin_override, "Platform origin for URL sources");

  fs::path seal_in;
  fs::path seal_out;
  std::string seal_name;
  std::string passphrase_file;
  bool use_base64 = false;
  auto* seal = app.add_subcommand("seal", "Encrypt a file for sharing");
  seal->add_option("--in", seal_in)->required()->check(CLI::ExistingFile);
  seal->add_option("--out", seal_out)->required();
  seal->add_option("--name", seal_name, "File name stored in the envelope (default: input name)");
  seal->add_option("--passphrase-file", passphrase_file, "Read the passphrase from a file (default: stdin)");
  seal->add_flag("--base64", use_base64, "Write base64 text instead of raw bytes");

  fs::path unseal_in;
  fs::path unseal_dir = ".";
  fs::path unseal_out;
  auto* unseal = app.add_subcommand("unseal", "Decrypt a shared blob");
  unseal->add_option("--in", unseal_in)->required()->check(CLI::ExistingFile);
  unseal->add_option("--out-dir", unseal_dir, "Directory for the recovered file");
  unseal->add_option("--out", unseal_out, "Exact output path (ignores the stored name)");
  unseal->add_option("--passphrase-file", passphrase_file, "Read the passphrase from a file (default: stdin)");
  unseal->add_flag("--base64", use_base64, "Input is base64 text");

  auto* bench_cmd = app.add_subcommand("bench", "Sandbox performance harness");
  bench_cmd->require_subcommand(1);
  std::string kind_label = "all";
  std::vector<std::size_t> sizes;
  std::size_t iterations = 100;
  std::uint64_t bench_seed = 42;
  std::string env_label = "native";
  std::string kernel_label = "auto";
  std::size_t budget_mb = 2048;
  fs::path bench_out;
  auto* bench_run = bench_cmd->add_subcommand("run", "Time workloads and write a CSV");
  bench_run->add_option("--kind", kind_label, "matmul, coinflips, matinverse, listsum or all");
  bench_run->add_option("--sizes", sizes, "Comma-separated sizes")->delimiter(',');
  bench_run->add_option("--iterations", iterations)->check(CLI::PositiveNumber);
  bench_run->add_option("--seed", bench_seed);
  bench_run->add_option("--env-label", env_label);
  bench_run->add_option("--kernels", kernel_label)->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  bench_run->add_option("--memory-budget-mb", budget_mb);
  bench_run->add_option("--out", bench_out)->required();

  fs::path native_csv;
  fs::path sandbox_csv;
  fs::path report_out;
  auto* bench_compare = bench_cmd->add_subcommand("compare", "Sandbox/native median ratios");
  bench_compare->add_option("--native", native_csv)->required()->check(CLI::ExistingFile);
  bench_compare->add_option("--sandbox", sandbox_csv)->required()->check(CLI::ExistingFile);
  bench_compare->add_option("--out", report_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version are successful exits; everything else is a usage error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    auto config = server::config_from_environment();
    if (!storage_override.empty()) config.storage_path = storage_override;
    if (*serve) return cmd_serve(config);
    if (*seed) return cmd_seed(config);
    if (*admin_grant) return cmd_grant(config, grant_user, grant_permission);
    if (*validate) {
      return cmd_validate(manifest_file,
                          origin_override.empty() ? config.public_origin : origin_override);
    }
    if (*seal) return cmd_seal(seal_in, seal_name, seal_out, passphrase_file, use_base64);
    if (*unseal) return cmd_unseal(unseal_in, unseal_dir, unseal_out, passphrase_file, use_base64);
    if (*bench_run) {
      return cmd_bench_run(kind_label, sizes, iterations, bench_seed, env_label, kernel_label,
                           budget_mb, bench_out);
    }
    if (*bench_compare) return cmd_bench_compare(native_csv, sandbox_csv, report_out);
  } catch (const Error& e) {
    std::cerr << fmt::format("error [{}]: {}\n", to_string(e.code()), e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
