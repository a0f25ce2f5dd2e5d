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

#include "scholarfed/plan.h"
#include "scholarfed/query.h"
#include "support/test_support.h"

namespace scholarfed {
namespace {

using nlohmann::json;
using testing::kListingDoi;
using testing::kListingOrcid;
using testing::MustDoi;
using testing::MustOrcid;

std::vector<Operation> Ops(const QueryPlan& plan) {
  std::vector<Operation> ops;
  for (const SubRequest& r : plan.sub_requests) ops.push_back(r.op);
  return ops;
}

const query::Field* Child(const query::Field& field, std::string_view name) {
  for (const query::Field& f : field.selections) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

TEST(QueryParseTest, ParsesFirstListingVerbatim) {
  Result<query::Document> doc = query::Parse(testing::Listing1());
  ASSERT_TRUE(doc.ok()) << ToString(doc.error());
  ASSERT_EQ(doc->roots.size(), 1u);
  const query::Field& paper = doc->roots[0];
  EXPECT_EQ(paper.name, "paper");
  ASSERT_NE(paper.Argument("doi"), nullptr);
  EXPECT_EQ(paper.Argument("doi")->text, kListingDoi);
  std::vector<std::string> names;
  for (const query::Field& f : paper.selections) names.push_back(f.name);
  EXPECT_EQ(names, (std::vector<std::string>{"doi", "title", "abstract", "citations", "references",
                                             "project", "topicDetails", "metricsInformation"}));
  EXPECT_EQ(Child(paper, "metricsInformation")->selections.size(), 2u);
}

TEST(QueryParseTest, ParsesSecondListingVerbatim) {
  Result<query::Document> doc = query::Parse(testing::Listing2());
  ASSERT_TRUE(doc.ok()) << ToString(doc.error());
  const query::Field& person = doc->roots[0];
  EXPECT_EQ(person.name, "person");
  EXPECT_EQ(person.Argument("id")->text, "https://orcid.org/0000-0001-6383-7148");
  const query::Field* topics = Child(person, "topics");
  ASSERT_NE(topics, nullptr);
  EXPECT_FALSE(topics->has_selection_set);
  const query::Field* nodes = Child(*Child(person, "publications"), "nodes");
  ASSERT_NE(nodes, nullptr);
  EXPECT_NE(Child(*nodes, "fundingReferences"), nullptr);
}

TEST(QueryParseTest, NamedOperationsAndVariables) {
  Result<query::Document> doc = query::Parse(
      "query Lookup($doi: String! = \"10.5555/default\") { paper(doi: $doi) { title } }");
  ASSERT_TRUE(doc.ok()) << ToString(doc.error());
  EXPECT_EQ(doc->operation_name, "Lookup");
  const query::Value* arg = doc->roots[0].Argument("doi");
  ASSERT_EQ(arg->kind, query::Value::Kind::kVariable);
  EXPECT_EQ(*query::Resolve(*arg, *doc, nullptr), "10.5555/default");
  EXPECT_EQ(*query::Resolve(*arg, *doc, json{{"doi", "10.5555/given"}}), "10.5555/given");

  Result<query::Document> unbound = query::Parse("query($d: String) { paper(doi: $x) { title } }");
  ASSERT_TRUE(unbound.ok());
  EXPECT_FALSE(query::Resolve(*unbound->roots[0].Argument("doi"), *unbound, nullptr).ok());
}

TEST(QueryParseTest, LiteralValues) {
  Result<query::Document> doc = query::Parse(
      R"({ f(a: 1, b: -2.5, c: true, d: null, e: ENUM, s: "q\"é", l: [1, "x"]) { g } })");
  ASSERT_TRUE(doc.ok()) << ToString(doc.error());
  const query::Field& f = doc->roots[0];
  EXPECT_EQ(f.Argument("a")->kind, query::Value::Kind::kInt);
  EXPECT_DOUBLE_EQ(f.Argument("b")->number, -2.5);
  EXPECT_TRUE(f.Argument("c")->boolean);
  EXPECT_EQ(f.Argument("d")->kind, query::Value::Kind::kNull);
  EXPECT_EQ(f.Argument("e")->kind, query::Value::Kind::kEnum);
  EXPECT_EQ(f.Argument("s")->text, "q\"\xc3\xa9");
  EXPECT_EQ(f.Argument("l")->list.size(), 2u);
  EXPECT_EQ(f.Argument("missing"), nullptr);
}

TEST(QueryParseTest, RejectsUnsupportedAndMalformedDocuments) {
  for (const char* text : {
           "", "{", "{ }", "{ paper { } }", "mutation { paper { title } }",
           "subscription { paper { title } }", "{ p: paper { title } }",
           "{ paper @include(if: true) { title } }", "{ paper { ...Frag } }",
           "{ paper(doi: {a: 1}) { title } }", "{ paper(doi: \"unterminated) { title } }",
           "{ paper { title } } trailing", "{ paper(doi: ) { title } }"}) {
    Result<query::Document> doc = query::Parse(text);
    ASSERT_FALSE(doc.ok()) << text;
    EXPECT_EQ(doc.error().kind, ErrorKind::kSchemaError) << text;
  }
}

TEST(QueryParseTest, ErrorsCarryLineAndColumn) {
  Result<query::Document> doc = query::Parse("{\n  paper(doi: \"x\") {\n    title @\n  }\n}");
  ASSERT_FALSE(doc.ok());
  EXPECT_EQ(doc.error().message.rfind("3:", 0), 0u) << doc.error().message;
}

TEST(PlanTest, FirstListingHitsFourSources) {
  Result<QueryPlan> plan = PlanQueryText(testing::Listing1());
  ASSERT_TRUE(plan.ok()) << ToString(plan.error());
  EXPECT_EQ(plan->root, RootKind::kPaper);
  EXPECT_EQ(plan->keys, (std::vector<std::string>{kListingDoi}));
  EXPECT_EQ(Ops(*plan), (std::vector<Operation>{Operation::kWorkCore, Operation::kProjects,
                                                Operation::kTopics, Operation::kMetrics}));
  EXPECT_TRUE(plan->sub_requests[0].root);
  for (std::size_t i = 1; i < plan->sub_requests.size(); ++i) {
    EXPECT_FALSE(plan->sub_requests[i].root);
  }
}

TEST(PlanTest, SecondListingHitsPersonAndTopics) {
  Result<QueryPlan> plan = PlanQueryText(testing::Listing2());
  ASSERT_TRUE(plan.ok()) << ToString(plan.error());
  EXPECT_EQ(plan->root, RootKind::kPerson);
  EXPECT_EQ(plan->keys, (std::vector<std::string>{kListingOrcid}));
  EXPECT_EQ(Ops(*plan), (std::vector<Operation>{Operation::kPerson, Operation::kPersonTopics}));
}

TEST(PlanTest, PrunesToSelectedGroups) {
  struct Case {
    std::string selection;
    std::vector<Operation> ops;
  };
  std::vector<Case> cases = {
      {"title", {Operation::kWorkCore}},
      {"doi citationCount", {Operation::kWorkCore}},
      {"citations { title }", {Operation::kWorkCore}},
      {"project { funder }", {Operation::kWorkCore, Operation::kProjects}},
      {"topicDetails { topic }", {Operation::kWorkCore, Operation::kTopics}},
      {"metricsInformation { score }", {Operation::kWorkCore, Operation::kMetrics}},
      {"datasets { totalCount }", {Operation::kWorkCore, Operation::kRelatedArtifacts}},
      {"datasets { totalCount } softwares { totalCount }",
       {Operation::kWorkCore, Operation::kRelatedArtifacts}},
  };
  for (const Case& c : cases) {
    Result<QueryPlan> plan =
        PlanQueryText("{ paper(doi: \"" + std::string(kListingDoi) + "\") { " + c.selection + " } }");
    ASSERT_TRUE(plan.ok()) << c.selection << ": " << ToString(plan.error());
    EXPECT_EQ(Ops(*plan), c.ops) << c.selection;
  }
  Result<QueryPlan> name_only =
      PlanQueryText("{ person(id: \"" + std::string(kListingOrcid) + "\") { name } }");
  ASSERT_TRUE(name_only.ok());
  EXPECT_EQ(Ops(*name_only), (std::vector<Operation>{Operation::kPerson}));
}

TEST(PlanTest, SubRequestsAreUnique) {
  Result<QueryPlan> plan = PlanQueryText(
      "{ paper(doi: \"10.5555/x\") { title project { funder } project { project } "
      "datasets { totalCount } softwares { totalCount } } }");
  ASSERT_TRUE(plan.ok());
  for (std::size_t i = 0; i < plan->sub_requests.size(); ++i) {
    for (std::size_t j = i + 1; j < plan->sub_requests.size(); ++j) {
      EXPECT_FALSE(plan->sub_requests[i].source == plan->sub_requests[j].source &&
                   plan->sub_requests[i].key == plan->sub_requests[j].key &&
                   plan->sub_requests[i].op == plan->sub_requests[j].op);
    }
  }
}

TEST(PlanTest, NormalizesArgumentsAndVariables) {
  Result<QueryPlan> plan = PlanQueryText(
      "query($d: String!) { paper(doi: $d) { title } }",
      json{{"d", "https://doi.org/10.1101/2020.03.08.20030643"}});
  ASSERT_TRUE(plan.ok()) << ToString(plan.error());
  EXPECT_EQ(plan->keys[0], kListingDoi);

  Result<QueryPlan> bad_checksum =
      PlanQueryText("{ person(id: \"0000-0001-6383-7149\") { name } }");
  ASSERT_FALSE(bad_checksum.ok());
  EXPECT_EQ(bad_checksum.error().kind, ErrorKind::kChecksumMismatch);
  Result<QueryPlan> bad_doi = PlanQueryText("{ paper(doi: \"nope\") { title } }");
  ASSERT_FALSE(bad_doi.ok());
  EXPECT_EQ(bad_doi.error().kind, ErrorKind::kMalformedPid);
}

TEST(PlanTest, RejectsSchemaViolations) {
  for (const char* text : {
           "{ paper(doi: \"10.5555/x\") { nonsense } }",
           "{ paper(doi: \"10.5555/x\") { citations } }",
           "{ paper(doi: \"10.5555/x\") { title { x } } }",
           "{ paper(doi: \"10.5555/x\", extra: 1) { title } }",
           "{ paper(doi: 5) { title } }",
           "{ paper { title } }",
           "{ paper(doi: \"10.5555/x\") { title } person(id: \"0000-0001-6383-7148\") { name } }",
           "{ journal(issn: \"1234\") { title } }",
           "{ citationCounts(dois: []) { doi } }",
           "{ person(id: \"0000-0001-6383-7148\") { employment { salary } } }",
       }) {
    Result<QueryPlan> plan = PlanQueryText(text);
    ASSERT_FALSE(plan.ok()) << text;
    EXPECT_EQ(plan.error().kind, ErrorKind::kSchemaError) << text;
  }
}

TEST(PlanTest, CitationCountsFanOutPerDistinctDoi) {
  Result<QueryPlan> plan = PlanQueryText(
      "{ citationCounts(dois: [\"10.5555/a\", \"https://doi.org/10.5555/A\", \"10.5555/b\"]) "
      "{ doi citationCount } }");
  ASSERT_TRUE(plan.ok()) << ToString(plan.error());
  EXPECT_EQ(plan->root, RootKind::kComparisonCitations);
  ASSERT_EQ(plan->sub_requests.size(), 2u);
  for (const SubRequest& r : plan->sub_requests) {
    EXPECT_EQ(r.op, Operation::kCitationCount);
    EXPECT_FALSE(r.root);
  }
  EXPECT_TRUE(PlanQueryText("{ citationCounts(dois: \"10.5555/a\") { doi } }").ok());
}

TEST(PlanTest, GeneratedQueriesCoverTheSchema) {
  Result<std::string> paper = PaperQueryText(MustDoi(kListingDoi), PaperFieldNames());
  ASSERT_TRUE(paper.ok());
  Result<QueryPlan> paper_plan = PlanQueryText(*paper);
  ASSERT_TRUE(paper_plan.ok()) << *paper << "\n" << ToString(paper_plan.error());
  EXPECT_EQ(paper_plan->groups.size(), 8u);
  EXPECT_EQ(paper_plan->sub_requests.size(), 5u);

  Result<std::string> person = PersonQueryText(MustOrcid(kListingOrcid), PersonFieldNames());
  ASSERT_TRUE(person.ok());
  Result<QueryPlan> person_plan = PlanQueryText(*person);
  ASSERT_TRUE(person_plan.ok()) << *person << "\n" << ToString(person_plan.error());
  EXPECT_EQ(person_plan->groups.size(), 6u);

  for (const std::string& field : PaperFieldNames()) {
    Result<std::string> single = PaperQueryText(MustDoi(kListingDoi), {field});
    ASSERT_TRUE(single.ok()) << field;
    EXPECT_TRUE(PlanQueryText(*single).ok()) << *single;
  }
  EXPECT_FALSE(PaperQueryText(MustDoi(kListingDoi), {"salary"}).ok());

  std::string counts = CitationCountsQueryText({MustDoi("10.5555/a"), MustDoi("10.5555/b")});
  Result<QueryPlan> counts_plan = PlanQueryText(counts);
  ASSERT_TRUE(counts_plan.ok()) << counts;
  EXPECT_EQ(counts_plan->sub_requests.size(), 2u);
}

TEST(PlanTest, DefaultPaperFieldsMatchFirstListing) {
  Result<std::string> text = PaperQueryText(MustDoi(kListingDoi), {});
  ASSERT_TRUE(text.ok());
  Result<QueryPlan> generated = PlanQueryText(*text);
  Result<QueryPlan> listing = PlanQueryText(testing::Listing1());
  ASSERT_TRUE(generated.ok() && listing.ok());
  EXPECT_EQ(generated->sub_requests, listing->sub_requests);
  EXPECT_EQ(generated->groups, listing->groups);
}

TEST(PlanTest, GroupNamesAndSources) {
  EXPECT_EQ(FieldGroupName(FieldGroup::kTopics), "topicDetails");
  EXPECT_EQ(FieldGroupName(FieldGroup::kMetrics), "metricsInformation");
  EXPECT_EQ(FieldGroupSource(FieldGroup::kProjects), Source::kProjects);
  EXPECT_EQ(FieldGroupSource(FieldGroup::kDatasets), Source::kPidGraph);
  EXPECT_EQ(FieldGroupSource(FieldGroup::kPersonTopics), Source::kTopics);
  EXPECT_EQ(OperationName(Operation::kWorkCore), "work_core");
}

}  // namespace
}  // namespace scholarfed
