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

#include "appnest/contract/validate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "appnest/contract/version.hpp"
#include "appnest/error.hpp"

namespace appnest::contract {
namespace {

using nlohmann::json;

constexpr std::string_view kPermittedKinds =
    "path, string, integer, float, boolean";

// Collects violations while walking the candidate document.
class Checker {
 public:
  void fail(std::string path, std::string message) {
    report_.violations.push_back({std::move(path), std::move(message)});
  }
  [[nodiscard]] bool ok() const { return report_.violations.empty(); }
  ValidationReport take() { return std::move(report_); }

  // Rejects any key outside `allowed`.
  void only_keys(const json& obj, const std::string& base,
                 std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(base + "/" + escape(key), "unknown key");
    }
  }

  // Returns the string at obj[key] or records a violation.
  const std::string* string_field(const json& obj, const std::string& base,
                                  std::string_view key, bool required) {
    const auto path = base + "/" + std::string(key);
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path, "required field is missing");
      return nullptr;
    }
    if (!it->is_string()) {
      fail(path, "must be a string");
      return nullptr;
    }
    return it->get_ptr<const std::string*>();
  }

  static std::string escape(std::string_view key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

 private:
  ValidationReport report_;
};

std::size_t utf8_length(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

bool is_identifier(std::string_view s, std::string_view extra = {}) {
  if (s.empty()) return false;
  auto head_ok = [&](unsigned char c) {
    return std::isalpha(c) || c == '_' || (extra.find(c) != std::string_view::npos && c != '.');
  };
  auto tail_ok = [&](unsigned char c) {
    return std::isalnum(c) || c == '_' || extra.find(c) != std::string_view::npos;
  };
  if (!head_ok(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return tail_ok(static_cast<unsigned char>(c)); });
}

std::string_view function_name_extras(std::optional<Runtime> runtime) {
  if (!runtime) return {};
  switch (*runtime) {
    case Runtime::R: return ".";
    case Runtime::Javascript: return "$";
    case Runtime::Python: return {};
  }
  return {};
}

std::optional<ParameterValue> check_default(Checker& c, const json& value,
                                            ParameterKind kind,
                                            const std::string& path) {
  switch (kind) {
    case ParameterKind::Path:
    case ParameterKind::String:
      if (value.is_string()) return value.get<std::string>();
      c.fail(path, fmt::format("default must be a string for kind {}", to_label(kind)));
      return std::nullopt;
    case ParameterKind::Integer:
      if (value.is_number_integer()) {
        if (value.is_number_unsigned() &&
            value.get<std::uint64_t>() >
                static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
          c.fail(path, "integer default out of range");
          return std::nullopt;
        }
        return value.get<std::int64_t>();
      }
      c.fail(path, "default must be an integer");
      return std::nullopt;
    case ParameterKind::Float:
      if (value.is_number()) {
        const double d = value.get<double>();
        if (std::isfinite(d)) return d;
      }
      c.fail(path, "default must be a finite number");
      return std::nullopt;
    case ParameterKind::Boolean:
      if (value.is_boolean()) return value.get<bool>();
      c.fail(path, "default must be true or false");
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<ParameterSpec> check_parameter(Checker& c, const json& p,
                                             const std::string& path) {
  if (!p.is_object()) {
    c.fail(path, "parameter must be an object");
    return std::nullopt;
  }
  c.only_keys(p, path, {"name", "kind", "description", "default"});
  ParameterSpec spec;
  bool good = true;
  if (const auto* name = c.string_field(p, path, "name", true)) {
    if (!is_identifier(*name)) {
      c.fail(path + "/name", "must be an identifier");
      good = false;
    }
    spec.name = *name;
  } else {
    good = false;
  }

  std::optional<ParameterKind> kind;
  if (const auto* label = c.string_field(p, path, "kind", true)) {
    kind = parameter_kind_from_label(*label);
    if (!kind)
      c.fail(path + "/kind", fmt::format("unsupported parameter kind \"{}\"; permitted kinds: {}",
                                         *label, kPermittedKinds));
  }
  if (!kind) good = false;
  else spec.kind = *kind;

  if (const auto* desc = c.string_field(p, path, "description", true))
    spec.description = *desc;
  else
    good = false;

  if (const auto it = p.find("default"); it != p.end() && kind) {
    spec.default_value = check_default(c, *it, *kind, path + "/default");
    if (!spec.default_value) good = false;
  }
  if (!good) return std::nullopt;
  return spec;
}

void check_entry_point(Checker& c, const json& doc, std::optional<Runtime> runtime,
                       ApplicationManifest& out) {
  const std::string base = "/entry_point";
  const auto it = doc.find("entry_point");
  if (it == doc.end()) {
    c.fail(base, "required field is missing");
    return;
  }
  if (!it->is_object()) {
    c.fail(base, "must be an object");
    return;
  }
  const json& ep = *it;
  c.only_keys(ep, base, {"function", "returns", "parameters"});

  if (const auto* fn = c.string_field(ep, base, "function", true)) {
    if (!is_identifier(*fn, function_name_extras(runtime)))
      c.fail(base + "/function", "must be a function identifier");
    out.entry_point.function_name = *fn;
  }
  if (const auto* ret = c.string_field(ep, base, "returns", true)) {
    if (auto kind = return_kind_from_label(*ret))
      out.entry_point.return_kind = *kind;
    else
      c.fail(base + "/returns", "must be \"html\" or \"file\"");
  }

  const auto params = ep.find("parameters");
  if (params == ep.end()) return;
  if (!params->is_array()) {
    c.fail(base + "/parameters", "must be an array");
    return;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < params->size(); ++i) {
    const auto path = fmt::format("{}/parameters/{}", base, i);
    auto spec = check_parameter(c, (*params)[i], path);
    if (!spec) continue;
    if (!seen.insert(spec->name).second) {
      c.fail(path + "/name", fmt::format("duplicate parameter name \"{}\"", spec->name));
      continue;
    }
    out.entry_point.parameters.push_back(std::move(*spec));
  }
}

void check_source(Checker& c, const json& doc, const OriginWhitelist* whitelist,
                  ApplicationManifest& out) {
  const std::string base = "/source";
  const auto it = doc.find("source");
  if (it == doc.end()) {
    c.fail(base, "required field is missing");
    return;
  }
  if (!it->is_object()) {
    c.fail(base, "must be an object");
    return;
  }
  c.only_keys(*it, base, {"inline", "url"});
  const bool has_inline = it->contains("inline");
  const bool has_url = it->contains("url");
  if (has_inline == has_url) {
    c.fail(base, "must contain exactly one of \"inline\" or \"url\"");
    return;
  }
  if (has_inline) {
    if (const auto* text = c.string_field(*it, base, "inline", true)) {
      if (text->empty()) c.fail(base + "/inline", "must not be empty");
      out.source = {SourceRef::Kind::Inline, *text};
    }
    return;
  }
  if (const auto* url = c.string_field(*it, base, "url", true)) {
    if (whitelist && !whitelist->allows_url(*url))
      c.fail(base + "/url", "URL origin is not on the distribution whitelist");
    out.source = {SourceRef::Kind::Url, *url};
  }
}

}  // namespace

static ValidationResult validate_with(const json& candidate, const OriginWhitelist* whitelist);

bool ValidationReport::mentions(std::string_view path) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.path == path; });
}

ValidationResult validate_manifest(const json& candidate,
                                   const OriginWhitelist& whitelist) {
  return validate_with(candidate, &whitelist);
}

ApplicationManifest manifest_from_stored_json(const json& stored) {
  auto result = validate_with(stored, nullptr);
  if (auto* m = std::get_if<ApplicationManifest>(&result)) return std::move(*m);
  throw Error(Errc::StorageError, "stored manifest no longer validates");
}

static ValidationResult validate_with(const json& candidate, const OriginWhitelist* whitelist) {
  Checker c;
  if (!candidate.is_object()) {
    c.fail("", "manifest must be a JSON object");
    return c.take();
  }
  c.only_keys(candidate, "",
              {"name", "version", "runtime", "short_description",
               "long_description", "tags", "source", "entry_point"});

  ApplicationManifest m;
  if (const auto* name = c.string_field(candidate, "", "name", true)) {
    if (name->empty()) c.fail("/name", "must not be empty");
    if (name->find('/') != std::string::npos)
      c.fail("/name", "must not contain '/'");
    if (std::any_of(name->begin(), name->end(),
                    [](unsigned char ch) { return ch < 0x20 || ch == 0x7f; }))
      c.fail("/name", "must not contain control characters");
    m.name = *name;
  }
  if (const auto* version = c.string_field(candidate, "", "version", true)) {
    if (!Version::parse(*version))
      c.fail("/version", "must be dotted numerics such as 1.0.2");
    m.version = *version;
  }
  std::optional<Runtime> runtime;
  if (const auto* label = c.string_field(candidate, "", "runtime", true)) {
    runtime = runtime_from_label(*label);
    if (runtime) m.runtime = *runtime;
    else c.fail("/runtime", "must be one of: python, r, javascript");
  }
  if (const auto* s = c.string_field(candidate, "", "short_description", true)) {
    if (utf8_length(*s) > kMaxShortDescriptionChars)
      c.fail("/short_description",
             fmt::format("must be at most {} characters", kMaxShortDescriptionChars));
    m.short_description = *s;
  }
  if (const auto* s = c.string_field(candidate, "", "long_description", false))
    m.long_description = *s;

  if (const auto tags = candidate.find("tags"); tags != candidate.end()) {
    if (!tags->is_array()) {
      c.fail("/tags", "must be an array");
    } else {
      for (std::size_t i = 0; i < tags->size(); ++i) {
        const auto path = fmt::format("/tags/{}", i);
        const auto& tag = (*tags)[i];
        if (!tag.is_string()) {
          c.fail(path, "must be a string");
          continue;
        }
        const auto& s = tag.get_ref<const std::string&>();
        if (s.empty()) {
          c.fail(path, "must not be empty");
        } else if (std::any_of(s.begin(), s.end(), [](unsigned char ch) {
                     return std::isspace(ch) || std::isupper(ch);
                   })) {
          c.fail(path, "must be lowercase without whitespace");
        } else if (std::find(m.tags.begin(), m.tags.end(), s) != m.tags.end()) {
          c.fail(path, fmt::format("duplicate tag \"{}\"", s));
        } else {
          m.tags.push_back(s);
        }
      }
    }
  }

  check_source(c, candidate, whitelist, m);
  check_entry_point(c, candidate, runtime, m);

  if (!c.ok()) return c.take();
  return m;
}

ValidationResult validate_manifest_text(std::string_view text,
                                        const OriginWhitelist& whitelist) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedDocument, e.what());
  }
  return validate_manifest(doc, whitelist);
}

json to_json(const ParameterValue& value) {
  return std::visit([](const auto& v) { return json(v); }, value);
}

json to_json(const ApplicationManifest& m) {
  json params = json::array();
  for (const auto& p : m.entry_point.parameters) {
    json jp = {{"name", p.name},
               {"kind", to_label(p.kind)},
               {"description", p.description}};
    if (p.default_value) jp["default"] = to_json(*p.default_value);
    params.push_back(std::move(jp));
  }
  json source;
  source[m.source.kind == SourceRef::Kind::Inline ? "inline" : "url"] = m.source.value;
  return {
      {"name", m.name},
      {"version", m.version},
      {"runtime", to_label(m.runtime)},
      {"short_description", m.short_description},
      {"long_description", m.long_description},
      {"tags", m.tags},
      {"source", std::move(source)},
      {"entry_point",
       {{"function", m.entry_point.function_name},
        {"returns", to_label(m.entry_point.return_kind)},
        {"parameters", std::move(params)}}},
  };
}

json to_json(const ValidationReport& report) {
  json out = json::array();
  for (const auto& v : report.violations)
    out.push_back({{"path", v.path}, {"message", v.message}});
  return out;
}

json summary_json(const ApplicationManifest& m) {
  return {{"name", m.name},
          {"version", m.version},
          {"runtime", to_label(m.runtime)},
          {"short_description", m.short_description},
          {"tags", m.tags}};
}

}  // namespace appnest::contract
