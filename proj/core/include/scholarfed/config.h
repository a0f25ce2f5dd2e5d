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

#ifndef SCHOLARFED_CONFIG_H_
#define SCHOLARFED_CONFIG_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scholarfed/connectors.h"
#include "scholarfed/domain.h"
#include "scholarfed/result.h"

namespace scholarfed {

enum class Mode { kLive, kFixtures };

std::string_view ModeName(Mode mode);

struct SourceConfig {
  std::string base_url;
  std::chrono::milliseconds timeout{5000};
  std::chrono::seconds ttl{900};
};

struct Config {
  int port = 8080;
  std::string host = "127.0.0.1";
  Mode mode = Mode::kFixtures;
  std::filesystem::path scenario;
  std::map<Source, SourceConfig> sources;
  std::size_t concurrency_cap = 8;
  std::chrono::milliseconds request_deadline{10'000};
  RetryPolicy retry;
  bool cache_enabled = true;
  std::vector<std::string> cors_origins{"*"};
  std::optional<std::string> metrics_api_key;

  ConnectorOptions connector_options() const;
  std::map<Source, std::string> base_urls() const;
};

// Built-in defaults: public upstream endpoints, 5 s timeouts, 15 min TTL
// (60 min for metrics), fixture mode over the bundled happy scenario.
Config DefaultConfig();

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
EnvLookup ProcessEnv();

// Precedence: environment > file > defaults. Recognised variables:
//   SCHOLARFED_PORT, SCHOLARFED_HOST, SCHOLARFED_MODE, SCHOLARFED_SCENARIO,
//   SCHOLARFED_CONCURRENCY_CAP, SCHOLARFED_REQUEST_DEADLINE_MS,
//   SCHOLARFED_CACHE, SCHOLARFED_CORS_ORIGINS (comma separated),
//   SCHOLARFED_<SOURCE>_BASE_URL / _TIMEOUT_MS / _TTL_S (SOURCE is the
//   upper-cased role name, e.g. ARTICLES_API), METRICS_API_KEY.
Result<Config> LoadConfig(const std::optional<std::filesystem::path>& file,
                          const EnvLookup& env);

// Merges a JSON config document into `config`.
Status ApplyConfigJson(std::string_view json_text, Config& config);

Status ValidateConfig(const Config& config);

std::filesystem::path DefaultDataDir();

}  // namespace scholarfed

#endif  // SCHOLARFED_CONFIG_H_
