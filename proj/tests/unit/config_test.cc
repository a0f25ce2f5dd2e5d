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

#include <gtest/gtest.h>

#include <map>

#include "scholarfed/config.h"
#include "support/test_support.h"

namespace scholarfed {
namespace {

using testing::TempDir;

EnvLookup Env(std::map<std::string, std::string> values) {
  return [values = std::move(values)](const std::string& name) -> std::optional<std::string> {
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
}

TEST(ConfigTest, DefaultsAreValid) {
  Config config = DefaultConfig();
  EXPECT_TRUE(ValidateConfig(config).ok());
  EXPECT_EQ(config.mode, Mode::kFixtures);
  EXPECT_EQ(config.port, 8080);
  EXPECT_EQ(config.sources.size(), 5u);
  EXPECT_EQ(config.sources[Source::kArticles].ttl, std::chrono::minutes(15));
  EXPECT_EQ(config.sources[Source::kMetrics].ttl, std::chrono::minutes(60));
  EXPECT_TRUE(std::filesystem::exists(config.scenario / "manifest.json"));
}

TEST(ConfigTest, EnvironmentOverridesFileOverridesDefault) {
  TempDir dir;
  testing::WriteFile(dir.path() / "config.json", R"({
    "port": 9000, "host": "0.0.0.0", "concurrency_cap": 4,
    "sources": {"topics_api": {"timeout_ms": 1234, "ttl_s": 5}},
    "retry": {"max_retries": 2}
  })");
  Result<Config> file_only = LoadConfig(dir.path() / "config.json", Env({}));
  ASSERT_TRUE(file_only.ok()) << ToString(file_only.error());
  EXPECT_EQ(file_only->port, 9000);
  EXPECT_EQ(file_only->host, "0.0.0.0");
  EXPECT_EQ(file_only->concurrency_cap, 4u);
  EXPECT_EQ(file_only->sources[Source::kTopics].timeout.count(), 1234);
  EXPECT_EQ(file_only->sources[Source::kTopics].ttl.count(), 5);
  EXPECT_EQ(file_only->sources[Source::kArticles].timeout.count(), 5000);
  EXPECT_EQ(file_only->retry.max_retries, 2);

  Result<Config> with_env = LoadConfig(
      dir.path() / "config.json",
      Env({{"SCHOLARFED_PORT", "9100"},
           {"SCHOLARFED_MODE", "live"},
           {"SCHOLARFED_TOPICS_API_TIMEOUT_MS", "50"},
           {"SCHOLARFED_METRICS_API_BASE_URL", "http://127.0.0.1:1"},
           {"SCHOLARFED_CORS_ORIGINS", "http://a.example,http://b.example"},
           {"METRICS_API_KEY", "k"}}));
  ASSERT_TRUE(with_env.ok()) << ToString(with_env.error());
  EXPECT_EQ(with_env->port, 9100);
  EXPECT_EQ(with_env->host, "0.0.0.0");
  EXPECT_EQ(with_env->mode, Mode::kLive);
  EXPECT_EQ(with_env->sources[Source::kTopics].timeout.count(), 50);
  EXPECT_EQ(with_env->sources[Source::kTopics].ttl.count(), 5);
  EXPECT_EQ(with_env->sources[Source::kMetrics].base_url, "http://127.0.0.1:1");
  EXPECT_EQ(with_env->cors_origins,
            (std::vector<std::string>{"http://a.example", "http://b.example"}));
  EXPECT_EQ(with_env->metrics_api_key, "k");
}

TEST(ConfigTest, RejectsInvalidValues) {
  for (const std::map<std::string, std::string>& env :
       std::vector<std::map<std::string, std::string>>{
           {{"SCHOLARFED_PORT", "70000"}},
           {{"SCHOLARFED_PORT", "-1"}},
           {{"SCHOLARFED_PORT", "eighty"}},
           {{"SCHOLARFED_MODE", "staging"}},
           {{"SCHOLARFED_CONCURRENCY_CAP", "0"}},
           {{"SCHOLARFED_CACHE", "maybe"}},
           {{"SCHOLARFED_ARTICLES_API_TIMEOUT_MS", "0"}},
           {{"SCHOLARFED_PID_GRAPH_BASE_URL", "not a url"}},
       }) {
    Result<Config> config = LoadConfig(std::nullopt, Env(env));
    ASSERT_FALSE(config.ok()) << env.begin()->first << "=" << env.begin()->second;
    EXPECT_EQ(config.error().kind, ErrorKind::kConfigError) << env.begin()->first;
  }
}

TEST(ConfigTest, RejectsBadFiles) {
  TempDir dir;
  EXPECT_FALSE(LoadConfig(dir.path() / "missing.json", Env({})).ok());
  for (const char* text : {"not json", R"({"unknown": 1})", R"({"port": "80"})",
                           R"({"port": 70000})", R"({"sources": {"nowhere": {}}})"}) {
    testing::WriteFile(dir.path() / "c.json", text);
    Result<Config> config = LoadConfig(dir.path() / "c.json", Env({}));
    ASSERT_FALSE(config.ok()) << text;
    EXPECT_EQ(config.error().kind, ErrorKind::kConfigError) << text;
  }
}

TEST(ConfigTest, ConnectorOptionsMirrorConfig) {
  Config config = DefaultConfig();
  config.sources[Source::kMetrics].timeout = std::chrono::milliseconds(42);
  config.concurrency_cap = 3;
  config.metrics_api_key = "k";
  ConnectorOptions options = config.connector_options();
  EXPECT_EQ(options.TimeoutFor(Source::kMetrics).count(), 42);
  EXPECT_EQ(options.concurrency_cap, 3u);
  EXPECT_EQ(options.metrics_api_key, "k");
  EXPECT_EQ(config.base_urls().at(Source::kPidGraph), "https://api.datacite.org");
}

TEST(ConfigTest, FixtureModeNeedsScenario) {
  Config config = DefaultConfig();
  config.scenario.clear();
  EXPECT_FALSE(ValidateConfig(config).ok());
  config.mode = Mode::kLive;
  EXPECT_TRUE(ValidateConfig(config).ok());
}

}  // namespace
}  // namespace scholarfed
