// Copyright 2026 The ScholarFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scholarfed/scenario.h"

#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "scholarfed/pid.h"
#include "scholarfed/wire.h"

namespace scholarfed {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kMaxBaseDepth = 8;

Error Invalid(std::string message) {
  return MakeError(ErrorKind::kScenarioInvalid, std::move(message));
}

// PIDs are stored canonically so manifests may use decorated forms.
std::string CanonicalKey(const std::string& key) {
  if (LooksLikeOrcid(key)) {
    if (Result<OrcidId> orcid = NormalizeOrcid(key); orcid.ok()) return orcid->value();
    return key;
  }
  if (Result<Doi> doi = NormalizeDoi(key); doi.ok()) return doi->value();
  return key;
}

Status ValidateEntry(const FixtureEntry& entry, std::int64_t max_latency_ms) {
  std::string where = std::string(SourceName(entry.source)) + "/" + entry.key;
  if (entry.key.empty()) return Invalid("fixture entry without key");
  if (entry.status < 100 || entry.status > 599) {
    return Invalid(where + ": status " + std::to_string(entry.status) + " out of range");
  }
  if (entry.status >= 200 && entry.status < 300 && entry.body.empty()) {
    return Invalid(where + ": 2xx entries need a body");
  }
  if (entry.latency_ms < 0 || entry.latency_ms > max_latency_ms) {
    return Invalid(where + ": latency_ms " + std::to_string(entry.latency_ms) +
                   " outside [0, " + std::to_string(max_latency_ms) + "]");
  }
  if (entry.repeat && *entry.repeat < 1) return Invalid(where + ": repeat must be >= 1");
  return {};
}

Result<std::string> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return Invalid("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Result<FixtureEntry> ParseEntry(const json& item, const fs::path& directory) {
  if (!item.is_object()) return Invalid("manifest entry is not an object");
  FixtureEntry entry{Source::kArticles, ""};
  auto source_name = item.value("source", std::string());
  Result<Source> source = SourceFromName(source_name);
  if (!source.ok()) return Invalid(source.error().message);
  entry.source = *source;
  if (!item.contains("key") || !item["key"].is_string()) {
    return Invalid("manifest entry without string key");
  }
  entry.key = CanonicalKey(item["key"].get<std::string>());
  if (item.contains("status")) {
    if (!item["status"].is_number_integer()) return Invalid("status must be an integer");
    entry.status = item["status"].get<int>();
  }
  if (item.contains("body_file")) {
    if (!item["body_file"].is_string()) return Invalid("body_file must be a string");
    Result<std::string> body = ReadFile(directory / item["body_file"].get<std::string>());
    if (!body.ok()) return body.error();
    entry.body = std::move(*body);
  } else if (item.contains("body")) {
    entry.body = item["body"].is_string() ? item["body"].get<std::string>()
                                          : item["body"].dump();
  }
  if (item.contains("latency_ms")) {
    if (!item["latency_ms"].is_number_integer()) {
      return Invalid("latency_ms must be an integer");
    }
    entry.latency_ms = item["latency_ms"].get<std::int64_t>();
  }
  if (item.contains("repeat") && !item["repeat"].is_null()) {
    if (!item["repeat"].is_number_integer()) return Invalid("repeat must be an integer");
    entry.repeat = item["repeat"].get<int>();
  }
  return entry;
}

struct Manifest {
  std::string name;
  std::int64_t max_latency_ms = kDefaultMaxLatencyMs;
  std::vector<FixtureEntry> entries;
};

Result<Manifest> LoadManifest(const fs::path& directory, int depth) {
  if (depth > kMaxBaseDepth) return Invalid("scenario base chain too deep");
  fs::path manifest_path = directory / "manifest.json";
  std::error_code ec;
  if (!fs::is_regular_file(manifest_path, ec)) {
    return Invalid("no manifest.json in " + directory.string());
  }
  Result<std::string> text = ReadFile(manifest_path);
  if (!text.ok()) return text.error();
  json doc = json::parse(*text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return Invalid(manifest_path.string() + " is not a JSON object");
  }

  Manifest manifest;
  manifest.name = doc.value("name", directory.filename().string());
  if (doc.contains("base")) {
    Result<Manifest> base =
        LoadManifest(directory / doc["base"].get<std::string>(), depth + 1);
    if (!base.ok()) return base.error();
    manifest.max_latency_ms = base->max_latency_ms;
    manifest.entries = std::move(base->entries);
  }
  if (doc.contains("max_latency_ms")) {
    if (!doc["max_latency_ms"].is_number_integer()) {
      return Invalid("max_latency_ms must be an integer");
    }
    manifest.max_latency_ms = doc["max_latency_ms"].get<std::int64_t>();
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    return Invalid(manifest_path.string() + " has no entries array");
  }

  std::vector<FixtureEntry> own;
  for (const json& item : doc["entries"]) {
    Result<FixtureEntry> entry = ParseEntry(item, directory);
    if (!entry.ok()) {
      return Invalid(manifest_path.string() + ": " + entry.error().message);
    }
    own.push_back(std::move(*entry));
  }
  std::erase_if(manifest.entries, [&](const FixtureEntry& inherited) {
    return std::any_of(own.begin(), own.end(), [&](const FixtureEntry& e) {
      return e.source == inherited.source && e.key == inherited.key;
    });
  });
  for (FixtureEntry& entry : own) manifest.entries.push_back(std::move(entry));
  if (manifest.entries.empty()) return Invalid(manifest_path.string() + " is empty");
  return manifest;
}

}  // namespace

Result<Scenario> Scenario::Load(const fs::path& directory) {
  Result<Manifest> manifest = LoadManifest(directory, 0);
  if (!manifest.ok()) return manifest.error();
  return FromEntries(std::move(manifest->name), std::move(manifest->entries),
                     manifest->max_latency_ms);
}

Result<Scenario> Scenario::FromEntries(std::string name,
                                       std::vector<FixtureEntry> entries,
                                       std::int64_t max_latency_ms) {
  Scenario scenario;
  scenario.name_ = std::move(name);
  scenario.max_latency_ms_ = max_latency_ms;
  for (FixtureEntry& entry : entries) {
    entry.key = CanonicalKey(entry.key);
    if (Status s = ValidateEntry(entry, max_latency_ms); !s.ok()) return s.error();
    Key key{entry.source, entry.key};
    scenario.entries_[key].push_back(std::move(entry));
  }
  return scenario;
}

std::size_t Scenario::entry_count() const {
  std::size_t n = 0;
  for (const auto& [key, sequence] : entries_) n += sequence.size();
  return n;
}

Scenario Scenario::WithLatency(std::int64_t latency_ms) const {
  Scenario copy = *this;
  copy.max_latency_ms_ = std::max(copy.max_latency_ms_, latency_ms);
  for (auto& [key, sequence] : copy.entries_) {
    for (FixtureEntry& entry : sequence) entry.latency_ms = latency_ms;
  }
  return copy;
}

Scenario Scenario::WithSourceStatus(Source source, int status, std::string body,
                                    std::int64_t latency_ms) const {
  Scenario copy = *this;
  copy.max_latency_ms_ = std::max(copy.max_latency_ms_, latency_ms);
  for (auto& [key, sequence] : copy.entries_) {
    if (key.first != source) continue;
    sequence = {FixtureEntry{source, key.second, status, body, latency_ms, std::nullopt}};
  }
  return copy;
}

void RequestLog::Append(Source source, std::string key) {
  std::lock_guard lock(mu_);
  entries_.push_back({source, std::move(key), std::chrono::system_clock::now()});
}

std::vector<LogEntry> RequestLog::Entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::vector<LogEntry> RequestLog::EntriesFor(Source source) const {
  std::lock_guard lock(mu_);
  std::vector<LogEntry> out;
  for (const LogEntry& e : entries_) {
    if (e.source == source) out.push_back(e);
  }
  return out;
}

std::size_t RequestLog::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::size_t RequestLog::CountFor(Source source) const {
  return EntriesFor(source).size();
}

void RequestLog::Clear() {
  std::lock_guard lock(mu_);
  entries_.clear();
}

ScenarioPlayer::ScenarioPlayer(Scenario scenario) : scenario_(std::move(scenario)) {}

void ScenarioPlayer::Reset(Scenario scenario) {
  std::unique_lock exclusive(reset_mu_);
  std::lock_guard lock(cursor_mu_);
  scenario_ = std::move(scenario);
  cursors_.clear();
  log_.Clear();
}

std::optional<FixtureEntry> ScenarioPlayer::Next(Source source,
                                                 const std::string& key) {
  std::shared_lock shared(reset_mu_);
  log_.Append(source, key);
  auto it = scenario_.entries().find({source, key});
  if (it == scenario_.entries().end()) return std::nullopt;
  const std::vector<FixtureEntry>& sequence = it->second;
  std::lock_guard lock(cursor_mu_);
  Cursor& cursor = cursors_[it->first];
  while (cursor.index + 1 < sequence.size() && sequence[cursor.index].repeat &&
         cursor.served >= *sequence[cursor.index].repeat) {
    ++cursor.index;
    cursor.served = 0;
  }
  ++cursor.served;
  return sequence[cursor.index];
}

std::string ScenarioPlayer::scenario_name() const {
  std::shared_lock shared(reset_mu_);
  return scenario_.name();
}

std::int64_t ScenarioPlayer::max_latency_ms() const {
  std::shared_lock shared(reset_mu_);
  return scenario_.max_latency_ms();
}

FixtureTransport::FixtureTransport(std::shared_ptr<ScenarioPlayer> player)
    : player_(std::move(player)) {}

Result<UpstreamResponse> FixtureTransport::Send(const UpstreamRequest& request,
                                                std::chrono::milliseconds timeout) {
  std::optional<std::string> key = wire::ExtractKey(
      request.source, request.method, request.path, request.params, request.body);
  if (!key) return UpstreamResponse{404, R"({"error":"Not Found"})"};
  std::optional<FixtureEntry> entry = player_->Next(request.source, *key);
  if (!entry) return UpstreamResponse{404, R"({"error":"Not Found"})"};
  auto latency = std::chrono::milliseconds(entry->latency_ms);
  if (latency >= timeout) {
    std::this_thread::sleep_for(timeout);
    return MakeError(ErrorKind::kUpstreamUnavailable,
                     std::string(SourceName(request.source)) + ": timeout");
  }
  if (latency.count() > 0) std::this_thread::sleep_for(latency);
  return UpstreamResponse{entry->status, std::move(entry->body)};
}

std::string ToJson(const std::vector<LogEntry>& entries) {
  json out = json::array();
  for (const LogEntry& e : entries) {
    out.push_back({{"source", SourceName(e.source)},
                   {"key", e.key},
                   {"timestamp_ms", std::chrono::duration_cast<std::chrono::milliseconds>(
                                        e.timestamp.time_since_epoch())
                                        .count()}});
  }
  return out.dump();
}

}  // namespace scholarfed
