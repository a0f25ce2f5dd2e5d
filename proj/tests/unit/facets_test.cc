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

#include <nlohmann/json.hpp>

#include "scholarfed/facets.h"
#include "support/facet_gen.h"
#include "support/test_support.h"

namespace scholarfed::facets {
namespace {

using nlohmann::json;
using testing::Labels;
using testing::MustDoi;

ComparisonTable Load(const std::string& name) {
  Result<ComparisonTable> table =
      ParseTableText(testing::ReadFile(testing::DataDir() / "comparisons" / name));
  if (!table.ok()) throw std::runtime_error(ToString(table.error()));
  return *table;
}

CitationCounter FixedCounts(std::map<std::string, CitationCount> counts, int* calls = nullptr) {
  return [counts = std::move(counts), calls](std::span<const Doi> dois) -> Result<CitationCounts> {
    if (calls) ++*calls;
    CitationCounts out;
    for (const Doi& doi : dois) {
      auto it = counts.find(doi.value());
      out[doi] = it == counts.end() ? std::nullopt : it->second;
    }
    return out;
  };
}

ComparisonTable ThreeRowExample() {
  ComparisonTable table = Load("earth_system_models.json");
  return *EnrichWithCitations(
      table, FixedCounts({{"10.5555/esm.0001", 12}, {"10.5555/esm.0002", 0}}));
}

TEST(FacetsTest, ThreeRowCitationExample) {
  ComparisonTable table = ThreeRowExample();
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.rows[0].citation_count, 12);
  EXPECT_EQ(table.rows[1].citation_count, 0);
  EXPECT_FALSE(table.rows[2].citation_count.has_value());
  std::vector<FacetFilter> filters = {CitationsAtLeast(1)};
  Result<FilterOutcome> outcome = FilterComparison(table, filters);
  ASSERT_TRUE(outcome.ok());
  EXPECT_EQ(Labels(outcome->table), (std::vector<std::string>{"Fixture earth system model A"}));
  EXPECT_EQ(outcome->kept, 1u);
  EXPECT_EQ(outcome->filtered, 1u);
  EXPECT_EQ(outcome->unknown, 1u);
}

TEST(FacetsTest, CombinedContentAndCitationExample) {
  ComparisonTable table = *EnrichWithCitations(
      Load("covid_r0.json"), FixedCounts({{"10.5555/r0.0001", 5}, {"10.5555/r0.0002", 7}}));
  std::vector<FacetFilter> filters = {*ParseWhere("R0 > 3.0"), CitationsAtLeast(0)};
  Result<ComparisonTable> kept = ApplyFacets(table, filters);
  ASSERT_TRUE(kept.ok()) << ToString(kept.error());
  ASSERT_EQ(kept->rows.size(), 1u);
  EXPECT_DOUBLE_EQ(std::get<double>(kept->rows[0].cells.at("R0")), 3.1);
}

TEST(FacetsTest, SummaryOfExamples) {
  std::vector<FacetSummaryEntry> summary = FacetSummary(ThreeRowExample());
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<CitationCountTarget>(summary[0].target));
  EXPECT_EQ(summary[0].range, (FacetRange{0.0, 12.0, 2}));
  EXPECT_EQ(summary[1].range, (FacetRange{25.0, 100.0, 3}));

  ComparisonTable empty;
  empty.columns = {{"R0", ColumnKind::kNumeric}};
  for (const FacetSummaryEntry& entry : FacetSummary(empty)) {
    EXPECT_EQ(entry.range, FacetRange{});
  }
  ComparisonTable single = empty;
  single.rows.push_back({std::nullopt, "one", {{"R0", 2.5}}, std::nullopt});
  EXPECT_EQ(FacetSummary(single)[1].range, (FacetRange{2.5, 2.5, 1}));

  json wire = json::parse(ToJson(FacetSummary(ThreeRowExample())).dump());
  EXPECT_EQ(wire[0], json::parse(R"({"target":"citation_count","min":0,"max":12,"present":2})"));
  EXPECT_EQ(wire[1]["column"], "atmosphere resolution (km)");
}

TEST(FacetsTest, EnrichmentSemantics) {
  int calls = 0;
  ComparisonTable none = Load("earth_system_models.json");
  for (Row& row : none.rows) {
    row.doi.reset();
    row.citation_count = 99;
  }
  Result<ComparisonTable> enriched = EnrichWithCitations(none, FixedCounts({}, &calls));
  ASSERT_TRUE(enriched.ok());
  EXPECT_EQ(calls, 0);
  for (const Row& row : enriched->rows) EXPECT_FALSE(row.citation_count.has_value());

  ComparisonTable zero;
  EXPECT_EQ(*EnrichWithCitations(zero, FixedCounts({}, &calls)), zero);
  EXPECT_EQ(calls, 0);

  ComparisonTable once = ThreeRowExample();
  ComparisonTable twice = *EnrichWithCitations(
      once, FixedCounts({{"10.5555/esm.0001", 12}, {"10.5555/esm.0002", 0}}));
  EXPECT_EQ(once, twice);

  ComparisonTable original = Load("earth_system_models.json");
  for (std::size_t i = 0; i < original.rows.size(); ++i) {
    Row stripped = once.rows[i];
    stripped.citation_count.reset();
    EXPECT_EQ(stripped, original.rows[i]);
  }

  auto failing = [](std::span<const Doi>) -> Result<CitationCounts> {
    return MakeError(ErrorKind::kUpstreamUnavailable, "down");
  };
  Result<ComparisonTable> failed = EnrichWithCitations(original, failing);
  ASSERT_FALSE(failed.ok());
  EXPECT_EQ(failed.error().kind, ErrorKind::kUpstreamUnavailable);
}

TEST(FacetsTest, EnrichmentDeduplicatesDois) {
  ComparisonTable table = Load("earth_system_models.json");
  table.rows.push_back(table.rows[0]);
  table.rows.back().label = "duplicate";
  std::size_t seen = 0;
  auto counter = [&](std::span<const Doi> dois) -> Result<CitationCounts> {
    seen = dois.size();
    return CitationCounts{};
  };
  ASSERT_TRUE(EnrichWithCitations(table, counter).ok());
  EXPECT_EQ(seen, 3u);
}

TEST(FacetsTest, FilterValidation) {
  ComparisonTable table = ThreeRowExample();
  Result<ComparisonTable> unknown = ApplyFacets(table, std::vector<FacetFilter>{
      {ContentColumn{"missing"}, FacetOp::kGt, 1}});
  ASSERT_FALSE(unknown.ok());
  EXPECT_EQ(unknown.error().kind, ErrorKind::kUnknownColumn);
  Result<ComparisonTable> text = ApplyFacets(table, std::vector<FacetFilter>{
      {ContentColumn{"model"}, FacetOp::kGt, 1}});
  ASSERT_FALSE(text.ok());
  EXPECT_EQ(text.error().kind, ErrorKind::kTypeMismatch);
  Result<ComparisonTable> nan = ApplyFacets(table, std::vector<FacetFilter>{
      {CitationCountTarget{}, FacetOp::kGt, std::nan("")}});
  EXPECT_FALSE(nan.ok());
}

TEST(FacetsTest, TableValidation) {
  ComparisonTable table = ThreeRowExample();
  EXPECT_TRUE(Validate(table).ok());
  ComparisonTable extra = table;
  extra.rows[0].cells["ghost"] = 1.0;
  EXPECT_EQ(Validate(extra).error().kind, ErrorKind::kUnknownColumn);
  ComparisonTable wrong = table;
  wrong.rows[0].cells["atmosphere resolution (km)"] = std::string("fine");
  EXPECT_EQ(Validate(wrong).error().kind, ErrorKind::kTypeMismatch);
  ComparisonTable duplicate = table;
  duplicate.columns.push_back(duplicate.columns[0]);
  EXPECT_FALSE(Validate(duplicate).ok());
  ComparisonTable negative = table;
  negative.rows[0].citation_count = -1;
  EXPECT_FALSE(Validate(negative).ok());
}

TEST(FacetsTest, ParsingAndSerializationRoundTrip) {
  ComparisonTable table = ThreeRowExample();
  Result<ComparisonTable> reparsed = ParseTable(json::parse(ToJson(table).dump()));
  ASSERT_TRUE(reparsed.ok()) << ToString(reparsed.error());
  EXPECT_EQ(*reparsed, table);

  for (const char* bad : {"[]", R"({"columns": 1, "rows": []})",
                          R"({"columns": [], "rows": [{"cells": {}}]})",
                          R"({"columns": [{"name": "a", "kind": "date"}], "rows": []})",
                          R"({"columns": [], "rows": [{"label": "x", "doi": "nope"}]})"}) {
    EXPECT_FALSE(ParseTableText(bad).ok()) << bad;
  }
  EXPECT_FALSE(ParseTableText("{").ok());

  FacetFilter filter{ContentColumn{"R0"}, FacetOp::kLe, 2.5};
  Result<FacetFilter> round = ParseFilter(json::parse(ToJson(filter).dump()));
  ASSERT_TRUE(round.ok());
  EXPECT_EQ(*round, filter);
  EXPECT_EQ(*ParseFilter(json::parse(R"({"target":"citation_count","op":"ge","threshold":3})")),
            CitationsAtLeast(3));
  EXPECT_FALSE(ParseFilter(json::parse(R"({"target":"citation_count","op":"ne","threshold":3})")).ok());
  EXPECT_FALSE(ParseFilter(json::parse(R"({"target":"column","op":"ge","threshold":3})")).ok());
  EXPECT_FALSE(ParseFilter(json::parse(R"({"target":"citation_count","op":"ge"})")).ok());
}

TEST(FacetsTest, WhereGrammar) {
  struct Case {
    const char* text;
    FacetOp op;
    std::string column;
    double threshold;
  };
  for (const Case& c : std::vector<Case>{{"R0 > 3.0", FacetOp::kGt, "R0", 3.0},
                                         {"R0>=3", FacetOp::kGe, "R0", 3},
                                         {"a b <= -1.5", FacetOp::kLe, "a b", -1.5},
                                         {"x < 2", FacetOp::kLt, "x", 2},
                                         {"x == 2", FacetOp::kEq, "x", 2},
                                         {"x = 2", FacetOp::kEq, "x", 2}}) {
    Result<FacetFilter> filter = ParseWhere(c.text);
    ASSERT_TRUE(filter.ok()) << c.text;
    EXPECT_EQ(*filter, (FacetFilter{ContentColumn{c.column}, c.op, c.threshold})) << c.text;
  }
  for (const char* bad : {"R0", "> 3", "R0 > ", "R0 > abc", "R0 != 3", "R0 > 3 4", "R0 > inf"}) {
    EXPECT_FALSE(ParseWhere(bad).ok()) << bad;
  }
}

class FacetPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260514};
  static constexpr int kTables = 1000;
};

TEST_F(FacetPropertyTest, MatchesBruteForceAndPreservesOrder) {
  for (int i = 0; i < kTables; ++i) {
    ComparisonTable table = testing::RandomTable(rng);
    ASSERT_TRUE(Validate(table).ok());
    std::vector<FacetFilter> filters;
    int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int f = 0; f < n; ++f) filters.push_back(testing::RandomFilter(rng, table));
    Result<FilterOutcome> outcome = FilterComparison(table, filters);
    ASSERT_TRUE(outcome.ok());
    EXPECT_EQ(Labels(outcome->table), testing::ReferenceFilter(table, filters));
    EXPECT_TRUE(testing::IsSubsequence(Labels(outcome->table), Labels(table)));
    EXPECT_EQ(outcome->kept + outcome->filtered + outcome->unknown, table.rows.size());
    EXPECT_EQ(outcome->table.columns, table.columns);
  }
}

TEST_F(FacetPropertyTest, EmptyFilterListIsIdentity) {
  for (int i = 0; i < kTables; ++i) {
    ComparisonTable table = testing::RandomTable(rng);
    Result<ComparisonTable> out = ApplyFacets(table, std::vector<FacetFilter>{});
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(*out, table);
  }
}

TEST_F(FacetPropertyTest, TighteningThresholdsShrinksResults) {
  for (int i = 0; i < kTables; ++i) {
    ComparisonTable table = testing::RandomTable(rng);
    FacetFilter filter = testing::RandomFilter(rng, table);
    filter.op = std::bernoulli_distribution(0.5)(rng) ? FacetOp::kGe : FacetOp::kGt;
    double step = std::uniform_int_distribution<int>(1, 20)(rng) / 4.0;
    FacetFilter tighter = filter;
    tighter.threshold += step;
    auto loose = Labels(*ApplyFacets(table, std::vector<FacetFilter>{filter}));
    auto tight = Labels(*ApplyFacets(table, std::vector<FacetFilter>{tighter}));
    EXPECT_TRUE(testing::IsSubsequence(tight, loose));

    filter.op = std::bernoulli_distribution(0.5)(rng) ? FacetOp::kLe : FacetOp::kLt;
    tighter = filter;
    tighter.threshold -= step;
    loose = Labels(*ApplyFacets(table, std::vector<FacetFilter>{filter}));
    tight = Labels(*ApplyFacets(table, std::vector<FacetFilter>{tighter}));
    EXPECT_TRUE(testing::IsSubsequence(tight, loose));
  }
}

TEST_F(FacetPropertyTest, ConjunctionIsOrderIndependentAndComposes) {
  for (int i = 0; i < kTables; ++i) {
    ComparisonTable table = testing::RandomTable(rng);
    FacetFilter f1 = testing::RandomFilter(rng, table);
    FacetFilter f2 = testing::RandomFilter(rng, table);
    ComparisonTable both = *ApplyFacets(table, std::vector<FacetFilter>{f1, f2});
    ComparisonTable swapped = *ApplyFacets(table, std::vector<FacetFilter>{f2, f1});
    ComparisonTable staged = *ApplyFacets(*ApplyFacets(table, std::vector<FacetFilter>{f1}),
                                          std::vector<FacetFilter>{f2});
    EXPECT_EQ(both, swapped);
    EXPECT_EQ(both, staged);
  }
}

TEST_F(FacetPropertyTest, SummaryBoundsContainEveryPresentValue) {
  for (int i = 0; i < kTables; ++i) {
    ComparisonTable table = testing::RandomTable(rng);
    for (const FacetSummaryEntry& entry : FacetSummary(table)) {
      std::size_t present = 0;
      for (const Row& row : table.rows) {
        std::optional<double> value;
        if (std::holds_alternative<CitationCountTarget>(entry.target)) {
          if (row.citation_count) value = static_cast<double>(*row.citation_count);
        } else if (auto it = row.cells.find(std::get<ContentColumn>(entry.target).name);
                   it != row.cells.end() && std::holds_alternative<double>(it->second)) {
          value = std::get<double>(it->second);
        }
        if (!value) continue;
        ++present;
        EXPECT_LE(*entry.range.min, *value);
        EXPECT_GE(*entry.range.max, *value);
      }
      EXPECT_EQ(entry.range.present, present);
      EXPECT_EQ(entry.range.min.has_value(), present > 0);
    }
  }
}

}  // namespace
}  // namespace scholarfed::facets
