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

#include <random>

#include <nlohmann/json.hpp>

#include "scholarfed/gateway.h"
#include "support/test_support.h"

namespace scholarfed {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using testing::FastConfig;
using testing::FixtureRig;
using testing::kListingDoi;
using testing::kListingOrcid;
using testing::LoadScenario;
using testing::MustDoi;

FederatedResponse MustQuery(const Gateway& gateway, std::string_view text) {
  Result<FederatedResponse> response = gateway.Query(text);
  if (!response.ok()) throw std::runtime_error(ToString(response.error()));
  return std::move(*response);
}

Scenario SlowSource(const Scenario& base, Source source, std::int64_t latency_ms) {
  std::vector<FixtureEntry> entries;
  for (const auto& [key, sequence] : base.entries()) {
    for (FixtureEntry entry : sequence) {
      if (key.first == source) entry.latency_ms = latency_ms;
      entries.push_back(std::move(entry));
    }
  }
  return *Scenario::FromEntries(base.name(), std::move(entries),
                                std::max(base.max_latency_ms(), latency_ms));
}

TEST(GatewayTest, FirstListingMergesFourSources) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  FederatedResponse response = MustQuery(*rig.gateway, testing::Listing1());
  ASSERT_TRUE(response.has_data());
  EXPECT_TRUE(response.errors.empty());
  EXPECT_FALSE(response.root_error.has_value());
  const ordered_json& paper = (*response.data)["paper"];
  EXPECT_EQ(paper["doi"], kListingDoi);
  EXPECT_FALSE(paper["title"].get<std::string>().empty());
  EXPECT_EQ(paper["citations"].size(), 3u);
  EXPECT_EQ(paper["references"].size(), 3u);
  EXPECT_EQ(paper["project"].size(), 2u);
  EXPECT_EQ(paper["topicDetails"].size(), 3u);
  EXPECT_TRUE(paper["metricsInformation"]["url"].is_string());
  EXPECT_TRUE(paper["metricsInformation"]["image"].is_string());
  std::vector<std::string> keys;
  for (const auto& [k, v] : paper.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"doi", "title", "abstract", "citations", "references",
                                            "project", "topicDetails", "metricsInformation"}));
  EXPECT_EQ(response.timing.size(), 4u);
  EXPECT_EQ(rig.log().size(), 4u);

  std::map<std::string, Source> attribution = response.attribution();
  EXPECT_EQ(attribution.at("metadata"), Source::kArticles);
  EXPECT_EQ(attribution.at("project"), Source::kProjects);
  EXPECT_EQ(attribution.at("topicDetails"), Source::kTopics);
  EXPECT_EQ(attribution.at("metricsInformation"), Source::kMetrics);
}

TEST(GatewayTest, SecondListingRendersPerson) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  FederatedResponse response = MustQuery(*rig.gateway, testing::Listing2());
  ASSERT_TRUE(response.has_data());
  EXPECT_TRUE(response.errors.empty());
  const ordered_json& person = (*response.data)["person"];
  EXPECT_EQ(person["id"], "https://orcid.org/0000-0001-6383-7148");
  EXPECT_EQ(person["employment"].size(), 3u);
  EXPECT_TRUE(person["employment"][0]["endDate"].is_null());
  EXPECT_EQ(person["datasets"]["totalCount"], 1);
  EXPECT_EQ(person["softwares"]["nodes"].size(), 1u);
  EXPECT_FALSE(person["publications"].contains("totalCount"));
  ASSERT_TRUE(person["topics"].is_array());
  for (const auto& topic : person["topics"]) EXPECT_TRUE(topic.is_string());
  const auto& creator = person["publications"]["nodes"][0]["creators"][0];
  EXPECT_TRUE(creator.contains("givenName"));
}

struct FailureCase {
  Source source;
  std::string label;
  int status;
  bool timeout;
  ErrorKind kind;
};

std::vector<FailureCase> FailureMatrix() {
  std::vector<FailureCase> cases;
  for (Source source : {Source::kProjects, Source::kTopics, Source::kMetrics}) {
    std::string name(SourceName(source));
    cases.push_back({source, name + " 500", 500, false, ErrorKind::kUpstreamUnavailable});
    cases.push_back({source, name + " 429", 429, false, ErrorKind::kRateLimited});
    cases.push_back({source, name + " timeout", 200, true, ErrorKind::kUpstreamUnavailable});
  }
  return cases;
}

TEST(GatewayTest, SingleSourceFailureKeepsOtherGroups) {
  Scenario happy = LoadScenario("listing1_happy");
  FixtureRig baseline(happy);
  ordered_json expected = (*MustQuery(*baseline.gateway, testing::Listing1()).data)["paper"];
  const std::map<Source, std::string> group = {{Source::kProjects, "project"},
                                               {Source::kTopics, "topicDetails"},
                                               {Source::kMetrics, "metricsInformation"}};
  for (const FailureCase& c : FailureMatrix()) {
    Scenario scenario = c.timeout ? SlowSource(happy, c.source, 5000)
                                  : happy.WithSourceStatus(c.source, c.status, "{}");
    FixtureRig rig(scenario, FastConfig(std::chrono::milliseconds(100)));
    FederatedResponse response = MustQuery(*rig.gateway, testing::Listing1());
    ASSERT_TRUE(response.has_data()) << c.label;
    ASSERT_EQ(response.errors.size(), 1u) << c.label;
    EXPECT_EQ(response.errors[0].source, c.source) << c.label;
    EXPECT_EQ(response.errors[0].kind, c.kind) << c.label;
    EXPECT_EQ(response.errors[0].key, kListingDoi) << c.label;
    const ordered_json& paper = (*response.data)["paper"];
    for (const auto& [name, value] : expected.items()) {
      ASSERT_TRUE(paper.contains(name)) << c.label << " " << name;
      if (name == group.at(c.source)) {
        EXPECT_TRUE(value.is_array() ? paper[name] == ordered_json::array() : paper[name].is_null())
            << c.label;
      } else {
        EXPECT_EQ(paper[name], value) << c.label << " " << name;
      }
    }
    EXPECT_FALSE(response.attribution().contains(group.at(c.source))) << c.label;
  }
}

TEST(GatewayTest, RootFailureLeavesNoData) {
  Scenario happy = LoadScenario("listing1_happy");
  for (int status : {404, 500, 429}) {
    FixtureRig rig(happy.WithSourceStatus(Source::kArticles, status, "{}"));
    FederatedResponse response = MustQuery(*rig.gateway, testing::Listing1());
    EXPECT_FALSE(response.has_data()) << status;
    ASSERT_TRUE(response.root_error.has_value()) << status;
    EXPECT_EQ(response.root_error->source, Source::kArticles);
    ordered_json wire = ToJson(response);
    EXPECT_TRUE(wire["data"].is_null());
    EXPECT_GE(wire["errors"].size(), 1u);
  }
  FixtureRig person(happy.WithSourceStatus(Source::kPidGraph, 503, ""));
  FederatedResponse response = MustQuery(*person.gateway, testing::Listing2());
  EXPECT_FALSE(response.has_data());
  EXPECT_EQ(response.root_error->kind, ErrorKind::kUpstreamUnavailable);
}

TEST(GatewayTest, BundledFailureScenarios) {
  struct Case {
    std::string scenario;
    Source source;
    bool data;
  };
  for (const Case& c : std::vector<Case>{{"projects_500", Source::kProjects, true},
                                         {"topics_timeout", Source::kTopics, true},
                                         {"metrics_429", Source::kMetrics, true},
                                         {"articles_404", Source::kArticles, false}}) {
    FixtureRig rig(LoadScenario(c.scenario));
    FederatedResponse response = MustQuery(*rig.gateway, testing::Listing1());
    EXPECT_EQ(response.has_data(), c.data) << c.scenario;
    ASSERT_EQ(response.errors.size(), 1u) << c.scenario;
    EXPECT_EQ(response.errors[0].source, c.source) << c.scenario;
  }
  FixtureRig rig(LoadScenario("pid_graph_500"));
  FederatedResponse response = MustQuery(*rig.gateway, testing::Listing2());
  EXPECT_FALSE(response.has_data());
  ASSERT_EQ(response.errors.size(), 1u);
  EXPECT_EQ(response.errors[0].source, Source::kPidGraph);
}

TEST(GatewayTest, RepeatedQueryIsServedFromCache) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  FederatedResponse first = MustQuery(*rig.gateway, testing::Listing1());
  std::size_t upstream = rig.log().size();
  FederatedResponse second = MustQuery(*rig.gateway, testing::Listing1());
  EXPECT_EQ(rig.log().size(), upstream);
  EXPECT_EQ(ToJson(first, false), ToJson(second, false));
  for (const auto& [source, timing] : second.timing) {
    EXPECT_TRUE(timing.from_cache) << SourceName(source);
    EXPECT_EQ(timing.requests, 0) << SourceName(source);
  }
  for (const auto& [source, timing] : first.timing) EXPECT_FALSE(timing.from_cache);
}

TEST(GatewayTest, FailuresAreNotCached) {
  Scenario happy = LoadScenario("listing1_happy");
  FixtureRig rig(happy.WithSourceStatus(Source::kMetrics, 429, "{}"));
  MustQuery(*rig.gateway, testing::Listing1());
  std::size_t metrics_calls = rig.log().CountFor(Source::kMetrics);
  MustQuery(*rig.gateway, testing::Listing1());
  EXPECT_EQ(rig.log().CountFor(Source::kMetrics), 2 * metrics_calls);
  EXPECT_EQ(rig.log().CountFor(Source::kArticles), 1u);
}

TEST(GatewayTest, CacheCanBeDisabled) {
  Config config = FastConfig();
  config.cache_enabled = false;
  FixtureRig rig(LoadScenario("listing1_happy"), config);
  MustQuery(*rig.gateway, testing::Listing1());
  MustQuery(*rig.gateway, testing::Listing1());
  EXPECT_EQ(rig.log().size(), 8u);
}

TEST(GatewayTest, MergeIsIndependentOfArrivalOrder) {
  Scenario happy = LoadScenario("listing1_happy");
  Config config = FastConfig(std::chrono::milliseconds(2000));
  config.cache_enabled = false;
  FixtureRig baseline(happy, config);
  ordered_json expected = ToJson(MustQuery(*baseline.gateway, testing::Listing1()), false);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> latency(0, 30);
  for (int round = 0; round < 6; ++round) {
    Scenario permuted = happy;
    for (Source source : kAllSources) permuted = SlowSource(permuted, source, latency(rng));
    FixtureRig rig(permuted, config);
    EXPECT_EQ(ToJson(MustQuery(*rig.gateway, testing::Listing1()), false).dump(),
              expected.dump())
        << round;
  }
}

TEST(GatewayTest, SubRequestsRunInParallelUnderTheCap) {
  Scenario slow = LoadScenario("listing1_happy").WithLatency(80);
  FixtureRig parallel(slow);
  FederatedResponse fast = MustQuery(*parallel.gateway, testing::Listing1());
  EXPECT_LT(fast.total_ms, 4 * 80.0);
  EXPECT_GE(fast.total_ms, 80.0);

  Config serial = FastConfig();
  serial.concurrency_cap = 1;
  FixtureRig one(slow, serial);
  FederatedResponse sequential = MustQuery(*one.gateway, testing::Listing1());
  EXPECT_GE(sequential.total_ms, 4 * 80.0);
}

TEST(GatewayTest, DeadlineBoundsTheResponse) {
  Scenario happy = LoadScenario("listing1_happy");
  Config config = FastConfig(std::chrono::milliseconds(5000));
  config.request_deadline = std::chrono::milliseconds(200);
  FixtureRig rig(SlowSource(happy, Source::kTopics, 2000), config);
  auto start = std::chrono::steady_clock::now();
  FederatedResponse response = MustQuery(*rig.gateway, testing::Listing1());
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::milliseconds(1500));
  ASSERT_TRUE(response.has_data());
  ASSERT_EQ(response.errors.size(), 1u);
  EXPECT_EQ(response.errors[0].source, Source::kTopics);
  EXPECT_NE(response.errors[0].message.find("deadline"), std::string::npos);
}

TEST(GatewayTest, PrunedQueryTouchesOnlyTheRootSource) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  FederatedResponse response =
      MustQuery(*rig.gateway, "{ paper(doi: \"10.1101/2020.03.08.20030643\") { title } }");
  ASSERT_TRUE(response.has_data());
  EXPECT_EQ(rig.log().size(), 1u);
  EXPECT_EQ((*response.data)["paper"].size(), 1u);
  EXPECT_EQ(response.timing.size(), 1u);
}

TEST(GatewayTest, RelatedArtifactsForPapers) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  Result<FederatedResponse> response =
      rig.gateway->QueryPaper(MustDoi(kListingDoi), {"title", "datasets", "softwares"});
  ASSERT_TRUE(response.ok());
  const ordered_json& paper = (*response->data)["paper"];
  EXPECT_EQ(paper["datasets"]["nodes"][0]["type"], "dataset");
  EXPECT_EQ(paper["softwares"]["nodes"][0]["type"], "software");
  FixtureRig failing(LoadScenario("listing1_happy").WithSourceStatus(Source::kPidGraph, 500, ""));
  Result<FederatedResponse> degraded =
      failing.gateway->QueryPaper(MustDoi(kListingDoi), {"title", "datasets"});
  ASSERT_TRUE(degraded.ok());
  EXPECT_TRUE((*degraded->data)["paper"]["datasets"].is_null());
  EXPECT_EQ(degraded->errors.size(), 1u);
}

TEST(GatewayTest, CitationCountsRoot) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  std::vector<Doi> dois = {MustDoi("10.5555/esm.0001"), MustDoi("10.5555/esm.0003"),
                           MustDoi("10.5555/esm.0002")};
  FederatedResponse response = rig.gateway->QueryCitationCounts(dois);
  ASSERT_TRUE(response.has_data());
  const ordered_json& counts = (*response.data)["citationCounts"];
  ASSERT_EQ(counts.size(), 3u);
  EXPECT_EQ(counts[0]["citationCount"], 12);
  EXPECT_TRUE(counts[1]["citationCount"].is_null());
  EXPECT_EQ(counts[2]["citationCount"], 0);
  EXPECT_EQ(response.citation_counts->size(), 3u);

  FixtureRig down(LoadScenario("listing1_happy").WithSourceStatus(Source::kArticles, 500, ""));
  std::vector<Doi> recorded = {MustDoi("10.5555/esm.0001"), MustDoi("10.5555/esm.0002")};
  FederatedResponse failed = down.gateway->QueryCitationCounts(recorded);
  EXPECT_FALSE(failed.has_data());
  ASSERT_TRUE(failed.root_error.has_value());
  EXPECT_EQ(failed.root_error->kind, ErrorKind::kRootUnavailable);
}

TEST(GatewayTest, WireShape) {
  FixtureRig rig(LoadScenario("metrics_429"));
  FederatedResponse response = MustQuery(*rig.gateway, testing::Listing1());
  ordered_json wire = ToJson(response);
  std::vector<std::string> keys;
  for (const auto& [k, v] : wire.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"data", "errors", "attribution", "timing"}));
  const auto& error = wire["errors"][0];
  EXPECT_EQ(error["source"], "metrics_api");
  EXPECT_EQ(error["key"], kListingDoi);
  EXPECT_EQ(error["kind"], "RateLimited");
  EXPECT_TRUE(error["message"].is_string());
  EXPECT_EQ(wire["attribution"]["project"], "projects_api");
  EXPECT_TRUE(wire["timing"]["total_ms"].is_number());
  EXPECT_EQ(wire["timing"]["sources"].size(), 4u);
  EXPECT_FALSE(ToJson(response, false).contains("timing"));
}

TEST(GatewayTest, QueryErrorsAreReported) {
  FixtureRig rig(LoadScenario("listing1_happy"));
  EXPECT_EQ(rig.gateway->Query("{ paper(doi: \"x\") { title } }").error().kind,
            ErrorKind::kMalformedPid);
  EXPECT_EQ(rig.gateway->Query("{ paper(doi: \"10.5555/x\") { bogus } }").error().kind,
            ErrorKind::kSchemaError);
  EXPECT_EQ(rig.log().size(), 0u);
}

TEST(GatewayTest, ConcurrentQueriesShareCacheSafely) {
  FixtureRig rig(LoadScenario("listing1_happy").WithLatency(5));
  ordered_json expected;
  {
    FixtureRig reference(LoadScenario("listing1_happy"));
    expected = ToJson(MustQuery(*reference.gateway, testing::Listing1()), false);
  }
  std::vector<std::string> results(16);
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < results.size(); ++i) {
      threads.emplace_back([&, i] {
        results[i] = ToJson(MustQuery(*rig.gateway, testing::Listing1()), false).dump();
      });
    }
  }
  for (const std::string& r : results) EXPECT_EQ(r, expected.dump());
}

}  // namespace
}  // namespace scholarfed
