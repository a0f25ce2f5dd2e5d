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

#ifndef SCHOLARFED_SCENARIO_H_
#define SCHOLARFED_SCENARIO_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "scholarfed/domain.h"
#include "scholarfed/result.h"
#include "scholarfed/transport.h"

namespace scholarfed {

inline constexpr std::int64_t kDefaultMaxLatencyMs = 30'000;

// One recorded upstream answer for a (source, key) pair.
struct FixtureEntry {
  Source source;
  std::string key;
  int status = 200;
  // Verbatim upstream payload.
  std::string body;
  std::int64_t latency_ms = 0;
  // Serve this many times, then fall through to the next entry for the key.
  std::optional<int> repeat;
  bool operator==(const FixtureEntry&) const = default;
};

// A named set of fixture entries. Entries sharing a (source, key) form a
// playback sequence in declaration order.
//
// On disk a scenario is a directory holding `manifest.json`:
//
//   {
//     "name": "metrics_429",
//     "base": "../listing1_happy",   // optional: inherit another scenario
//     "max_latency_ms": 30000,       // optional
//     "entries": [
//       {"source": "articles_api", "key": "10.1101/...", "status": 200,
//        "body_file": "articles_api/paper.json", "latency_ms": 0,
//        "repeat": 1}
//     ]
//   }
//
// `body_file` is relative to the manifest; `body` may inline the payload
// instead. Entries of a derived scenario replace every inherited entry for
// the same (source, key).
class Scenario {
 public:
  using Key = std::pair<Source, std::string>;

  static Result<Scenario> Load(const std::filesystem::path& directory);
  static Result<Scenario> FromEntries(
      std::string name, std::vector<FixtureEntry> entries,
      std::int64_t max_latency_ms = kDefaultMaxLatencyMs);

  const std::string& name() const { return name_; }
  std::int64_t max_latency_ms() const { return max_latency_ms_; }
  const std::map<Key, std::vector<FixtureEntry>>& entries() const {
    return entries_;
  }
  std::size_t entry_count() const;

  // Copy with every entry's latency replaced; used for latency injection.
  Scenario WithLatency(std::int64_t latency_ms) const;
  // Copy where all entries for `source` are replaced by a single entry of
  // the given status and body for each key.
  Scenario WithSourceStatus(Source source, int status, std::string body,
                            std::int64_t latency_ms = 0) const;

 private:
  Scenario() = default;

  std::string name_;
  std::int64_t max_latency_ms_ = kDefaultMaxLatencyMs;
  std::map<Key, std::vector<FixtureEntry>> entries_;
};

struct LogEntry {
  Source source;
  std::string key;
  std::chrono::system_clock::time_point timestamp;
};

// Append-only within a scenario.
class RequestLog {
 public:
  void Append(Source source, std::string key);
  std::vector<LogEntry> Entries() const;
  std::vector<LogEntry> EntriesFor(Source source) const;
  std::size_t size() const;
  std::size_t CountFor(Source source) const;
  void Clear();

 private:
  mutable std::mutex mu_;
  std::vector<LogEntry> entries_;
};

// Shared playback state: sequence cursors and the request log. Reset is
// exclusive with in-flight lookups.
class ScenarioPlayer {
 public:
  explicit ScenarioPlayer(Scenario scenario);

  // Replaces the scenario, rewinds all cursors and clears the log.
  void Reset(Scenario scenario);

  // Logs the request and returns the entry to serve, advancing the cursor.
  // nullopt when the scenario has nothing for the key.
  std::optional<FixtureEntry> Next(Source source, const std::string& key);

  const RequestLog& log() const { return log_; }
  RequestLog& log() { return log_; }
  std::string scenario_name() const;
  std::int64_t max_latency_ms() const;

 private:
  struct Cursor {
    std::size_t index = 0;
    int served = 0;
  };

  mutable std::shared_mutex reset_mu_;
  std::mutex cursor_mu_;
  Scenario scenario_;
  std::map<Scenario::Key, Cursor> cursors_;
  RequestLog log_;
};

// Serves scenario entries in-process, honouring latency and timeouts. The
// connectors cannot tell it apart from HTTP playback.
class FixtureTransport : public Transport {
 public:
  explicit FixtureTransport(std::shared_ptr<ScenarioPlayer> player);

  Result<UpstreamResponse> Send(const UpstreamRequest& request,
                                std::chrono::milliseconds timeout) override;

  const std::shared_ptr<ScenarioPlayer>& player() const { return player_; }

 private:
  std::shared_ptr<ScenarioPlayer> player_;
};

std::string ToJson(const std::vector<LogEntry>& entries);

}  // namespace scholarfed

#endif  // SCHOLARFED_SCENARIO_H_
