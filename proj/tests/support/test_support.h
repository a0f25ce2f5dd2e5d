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

#ifndef SCHOLARFED_TESTS_SUPPORT_TEST_SUPPORT_H_
#define SCHOLARFED_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "scholarfed/config.h"
#include "scholarfed/gateway.h"
#include "scholarfed/scenario.h"
#include "scholarfed/stub_server.h"

namespace scholarfed::testing {

inline constexpr char kListingDoi[] = "10.1101/2020.03.08.20030643";
inline constexpr char kListingOrcid[] = "0000-0001-6383-7148";

inline std::filesystem::path DataDir() { return SCHOLARFED_TEST_DATA_DIR; }
inline std::filesystem::path ScenarioDir(const std::string& name) {
  return DataDir() / "scenarios" / name;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string Listing1() { return ReadFile(DataDir() / "queries" / "listing1.graphql"); }
inline std::string Listing2() { return ReadFile(DataDir() / "queries" / "listing2.graphql"); }

inline Scenario LoadScenario(const std::string& name) {
  Result<Scenario> scenario = Scenario::Load(ScenarioDir(name));
  if (!scenario.ok()) throw std::runtime_error(ToString(scenario.error()));
  return std::move(*scenario);
}

inline Doi MustDoi(std::string_view raw) {
  Result<Doi> doi = NormalizeDoi(raw);
  if (!doi.ok()) throw std::runtime_error(ToString(doi.error()));
  return *doi;
}

inline OrcidId MustOrcid(std::string_view raw) {
  Result<OrcidId> orcid = NormalizeOrcid(raw);
  if (!orcid.ok()) throw std::runtime_error(ToString(orcid.error()));
  return *orcid;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("scholarfed-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

// Fixture-mode configuration with short timeouts and near-zero backoff so
// failure scenarios finish quickly.
inline Config FastConfig(std::chrono::milliseconds timeout = std::chrono::milliseconds(300)) {
  Config config = DefaultConfig();
  config.scenario = ScenarioDir("listing1_happy");
  for (auto& [source, source_config] : config.sources) source_config.timeout = timeout;
  config.retry.initial_backoff = std::chrono::milliseconds(1);
  config.retry.jitter = std::chrono::milliseconds(0);
  config.request_deadline = std::chrono::milliseconds(5000);
  return config;
}

// In-process playback of a scenario behind a full gateway.
struct FixtureRig {
  std::shared_ptr<ScenarioPlayer> player;
  std::shared_ptr<Gateway> gateway;

  explicit FixtureRig(Scenario scenario, Config config = FastConfig())
      : player(std::make_shared<ScenarioPlayer>(std::move(scenario))),
        gateway(MakeGateway(config, std::make_shared<FixtureTransport>(player))) {}

  const RequestLog& log() const { return player->log(); }
};

// Scenario served over HTTP by stub listeners, with a live-mode gateway
// pointed at them.
struct StubRig {
  std::shared_ptr<ScenarioPlayer> player;
  std::unique_ptr<StubServer> stub;
  Config config;
  std::shared_ptr<Gateway> gateway;

  explicit StubRig(Scenario scenario, Config base = FastConfig())
      : player(std::make_shared<ScenarioPlayer>(std::move(scenario))),
        stub(std::make_unique<StubServer>(player)),
        config(std::move(base)) {
    Status started = stub->Start(ConsecutivePorts(0));
    if (!started.ok()) throw std::runtime_error(ToString(started.error()));
    config.mode = Mode::kLive;
    for (const auto& [source, url] : stub->base_urls()) config.sources[source].base_url = url;
    Result<std::shared_ptr<Gateway>> made = MakeGateway(config);
    if (!made.ok()) throw std::runtime_error(ToString(made.error()));
    gateway = *made;
  }

  const RequestLog& log() const { return player->log(); }
};

}  // namespace scholarfed::testing

#endif  // SCHOLARFED_TESTS_SUPPORT_TEST_SUPPORT_H_
