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

#include "scholarfed/config.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scholarfed/transport.h"

#ifndef SCHOLARFED_DATA_DIR
#define SCHOLARFED_DATA_DIR "data"
#endif

namespace scholarfed {
namespace {

using nlohmann::json;

Error ConfigError(std::string message) {
  return MakeError(ErrorKind::kConfigError, std::move(message));
}

Result<std::int64_t> ParseInt(const std::string& text, const std::string& what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return ConfigError(what + " must be an integer, got '" + text + "'");
  }
  return value;
}

Result<Mode> ParseMode(const std::string& text) {
  if (text == "live") return Mode::kLive;
  if (text == "fixtures") return Mode::kFixtures;
  return ConfigError("mode must be 'live' or 'fixtures', got '" + text + "'");
}

Result<bool> ParseBool(const std::string& text, const std::string& what) {
  if (text == "1" || text == "true" || text == "on") return true;
  if (text == "0" || text == "false" || text == "off") return false;
  return ConfigError(what + " must be a boolean, got '" + text + "'");
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string EnvPrefix(Source source) {
  std::string name(SourceName(source));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return "SCHOLARFED_" + name + "_";
}

template <typename T>
Result<T> Number(const json& value, const std::string& what) {
  if (!value.is_number_integer()) return ConfigError(what + " must be an integer");
  return value.get<T>();
}

}  // namespace

std::string_view ModeName(Mode mode) {
  return mode == Mode::kLive ? "live" : "fixtures";
}

std::filesystem::path DefaultDataDir() { return SCHOLARFED_DATA_DIR; }

ConnectorOptions Config::connector_options() const {
  ConnectorOptions options;
  for (const auto& [source, sc] : sources) options.timeouts[source] = sc.timeout;
  options.retry = retry;
  options.concurrency_cap = concurrency_cap;
  options.metrics_api_key = metrics_api_key;
  return options;
}

std::map<Source, std::string> Config::base_urls() const {
  std::map<Source, std::string> urls;
  for (const auto& [source, sc] : sources) urls[source] = sc.base_url;
  return urls;
}

Config DefaultConfig() {
  Config config;
  config.scenario = DefaultDataDir() / "scenarios" / "listing1_happy";
  config.sources = {
      {Source::kArticles, {"https://api.semanticscholar.org"}},
      {Source::kProjects, {"https://api.openaire.eu"}},
      {Source::kTopics, {"https://query.wikidata.org"}},
      {Source::kMetrics, {"https://api.altmetric.com"}},
      {Source::kPidGraph, {"https://api.datacite.org"}},
  };
  config.sources[Source::kMetrics].ttl = std::chrono::minutes(60);
  return config;
}

EnvLookup ProcessEnv() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* value = std::getenv(name.c_str())) return std::string(value);
    return std::nullopt;
  };
}

Status ApplyConfigJson(std::string_view json_text, Config& config) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return ConfigError("config file is not a JSON object");
  }
  try {
    for (const auto& [name, value] : doc.items()) {
      if (name == "port") {
        auto port = Number<int>(value, "port");
        if (!port.ok()) return port.error();
        config.port = *port;
      } else if (name == "host") {
        config.host = value.get<std::string>();
      } else if (name == "mode") {
        auto mode = ParseMode(value.get<std::string>());
        if (!mode.ok()) return mode.error();
        config.mode = *mode;
      } else if (name == "scenario") {
        config.scenario = value.get<std::string>();
      } else if (name == "concurrency_cap") {
        auto cap = Number<std::int64_t>(value, "concurrency_cap");
        if (!cap.ok()) return cap.error();
        if (*cap < 1) return ConfigError("concurrency_cap must be >= 1");
        config.concurrency_cap = static_cast<std::size_t>(*cap);
      } else if (name == "request_deadline_ms") {
        auto ms = Number<std::int64_t>(value, "request_deadline_ms");
        if (!ms.ok()) return ms.error();
        config.request_deadline = std::chrono::milliseconds(*ms);
      } else if (name == "cache_enabled") {
        config.cache_enabled = value.get<bool>();
      } else if (name == "cors_origins") {
        config.cors_origins = value.get<std::vector<std::string>>();
      } else if (name == "metrics_api_key") {
        config.metrics_api_key = value.get<std::string>();
      } else if (name == "retry") {
        config.retry.max_retries = value.value("max_retries", config.retry.max_retries);
        config.retry.initial_backoff = std::chrono::milliseconds(
            value.value("initial_backoff_ms", config.retry.initial_backoff.count()));
        config.retry.jitter = std::chrono::milliseconds(
            value.value("jitter_ms", config.retry.jitter.count()));
      } else if (name == "sources") {
        for (const auto& [source_name, sc] : value.items()) {
          Result<Source> source = SourceFromName(source_name);
          if (!source.ok()) return ConfigError(source.error().message);
          SourceConfig& target = config.sources[*source];
          if (sc.contains("base_url")) target.base_url = sc["base_url"].get<std::string>();
          if (sc.contains("timeout_ms")) {
            auto ms = Number<std::int64_t>(sc["timeout_ms"], source_name + ".timeout_ms");
            if (!ms.ok()) return ms.error();
            target.timeout = std::chrono::milliseconds(*ms);
          }
          if (sc.contains("ttl_s")) {
            auto s = Number<std::int64_t>(sc["ttl_s"], source_name + ".ttl_s");
            if (!s.ok()) return s.error();
            target.ttl = std::chrono::seconds(*s);
          }
        }
      } else {
        return ConfigError("unknown config key '" + name + "'");
      }
    }
  } catch (const json::exception& e) {
    return ConfigError(std::string("bad config value: ") + e.what());
  }
  return {};
}

Result<Config> LoadConfig(const std::optional<std::filesystem::path>& file,
                          const EnvLookup& env) {
  Config config = DefaultConfig();
  if (file) {
    std::ifstream in(*file);
    if (!in) return ConfigError("cannot read config file " + file->string());
    std::stringstream text;
    text << in.rdbuf();
    if (Status s = ApplyConfigJson(text.str(), config); !s.ok()) return s.error();
  }

  auto get = [&](const std::string& name) { return env(name); };
  if (auto v = get("SCHOLARFED_PORT")) {
    auto port = ParseInt(*v, "SCHOLARFED_PORT");
    if (!port.ok()) return port.error();
    config.port = static_cast<int>(*port);
  }
  if (auto v = get("SCHOLARFED_HOST")) config.host = *v;
  if (auto v = get("SCHOLARFED_MODE")) {
    auto mode = ParseMode(*v);
    if (!mode.ok()) return mode.error();
    config.mode = *mode;
  }
  if (auto v = get("SCHOLARFED_SCENARIO")) config.scenario = *v;
  if (auto v = get("SCHOLARFED_CONCURRENCY_CAP")) {
    auto cap = ParseInt(*v, "SCHOLARFED_CONCURRENCY_CAP");
    if (!cap.ok()) return cap.error();
    if (*cap < 1) return ConfigError("SCHOLARFED_CONCURRENCY_CAP must be >= 1");
    config.concurrency_cap = static_cast<std::size_t>(*cap);
  }
  if (auto v = get("SCHOLARFED_REQUEST_DEADLINE_MS")) {
    auto ms = ParseInt(*v, "SCHOLARFED_REQUEST_DEADLINE_MS");
    if (!ms.ok()) return ms.error();
    config.request_deadline = std::chrono::milliseconds(*ms);
  }
  if (auto v = get("SCHOLARFED_CACHE")) {
    auto on = ParseBool(*v, "SCHOLARFED_CACHE");
    if (!on.ok()) return on.error();
    config.cache_enabled = *on;
  }
  if (auto v = get("SCHOLARFED_CORS_ORIGINS")) config.cors_origins = SplitCommas(*v);
  if (auto v = get("METRICS_API_KEY"); v && !v->empty()) config.metrics_api_key = *v;
  for (Source source : kAllSources) {
    const std::string prefix = EnvPrefix(source);
    SourceConfig& sc = config.sources[source];
    if (auto v = get(prefix + "BASE_URL")) sc.base_url = *v;
    if (auto v = get(prefix + "TIMEOUT_MS")) {
      auto ms = ParseInt(*v, prefix + "TIMEOUT_MS");
      if (!ms.ok()) return ms.error();
      sc.timeout = std::chrono::milliseconds(*ms);
    }
    if (auto v = get(prefix + "TTL_S")) {
      auto s = ParseInt(*v, prefix + "TTL_S");
      if (!s.ok()) return s.error();
      sc.ttl = std::chrono::seconds(*s);
    }
  }
  if (Status s = ValidateConfig(config); !s.ok()) return s.error();
  return config;
}

Status ValidateConfig(const Config& config) {
  if (config.port < 0 || config.port > 65535) {
    return ConfigError("port " + std::to_string(config.port) + " is outside 0-65535");
  }
  if (config.concurrency_cap < 1) return ConfigError("concurrency_cap must be >= 1");
  if (config.request_deadline.count() <= 0) {
    return ConfigError("request_deadline_ms must be positive");
  }
  if (config.retry.max_retries < 0) return ConfigError("retry.max_retries must be >= 0");
  for (Source source : kAllSources) {
    auto it = config.sources.find(source);
    if (it == config.sources.end()) {
      return ConfigError("no configuration for " + std::string(SourceName(source)));
    }
    if (Result<BaseUrl> base = SplitBaseUrl(it->second.base_url); !base.ok()) {
      return base.error();
    }
    if (it->second.timeout.count() <= 0) {
      return ConfigError(std::string(SourceName(source)) + ".timeout_ms must be positive");
    }
    if (it->second.ttl.count() < 0) {
      return ConfigError(std::string(SourceName(source)) + ".ttl_s must be >= 0");
    }
  }
  if (config.mode == Mode::kFixtures && config.scenario.empty()) {
    return ConfigError("fixture mode needs a scenario directory");
  }
  return {};
}

}  // namespace scholarfed
