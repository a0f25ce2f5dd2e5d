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

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "scholarfed/plan.h"

namespace scholarfed {
namespace {

struct SchemaNode {
  std::string name;
  std::vector<SchemaNode> children;
  std::optional<FieldGroup> group;
  // Accepted both as a leaf and with a selection set.
  bool either = false;

  bool object() const { return !children.empty(); }
};

SchemaNode Leaf(std::string name) { return {std::move(name), {}, std::nullopt}; }

SchemaNode Object(std::string name, std::vector<SchemaNode> children) {
  return {std::move(name), std::move(children), std::nullopt};
}

SchemaNode Grouped(SchemaNode node, FieldGroup group) {
  node.group = group;
  return node;
}

SchemaNode RefNode(std::string name) {
  return Object(std::move(name), {Leaf("title"), Leaf("doi")});
}

SchemaNode ConnectionNode(std::string name) {
  SchemaNode node = Object(
      "nodes",
      {Leaf("id"), Leaf("type"), Object("titles", {Leaf("title")}),
       Object("creators", {Leaf("givenName"), Leaf("familyName"), Leaf("id")}),
       Object("fundingReferences",
              {Leaf("awardTitle"), Leaf("awardNumber"), Leaf("funderName")})});
  return Object(std::move(name), {Leaf("totalCount"), std::move(node)});
}

const std::vector<SchemaNode>& PaperSchema() {
  static const std::vector<SchemaNode> schema = {
      Grouped(Leaf("doi"), FieldGroup::kMetadata),
      Grouped(Leaf("title"), FieldGroup::kMetadata),
      Grouped(Leaf("abstract"), FieldGroup::kMetadata),
      Grouped(Leaf("citationCount"), FieldGroup::kMetadata),
      Grouped(RefNode("citations"), FieldGroup::kCitations),
      Grouped(RefNode("references"), FieldGroup::kReferences),
      Grouped(Object("project", {Leaf("funder"), Leaf("project"), Leaf("awardNumber")}),
              FieldGroup::kProjects),
      Grouped(Object("topicDetails", {Leaf("topic"), Leaf("id")}), FieldGroup::kTopics),
      Grouped(Object("metricsInformation", {Leaf("url"), Leaf("image"), Leaf("score")}),
              FieldGroup::kMetrics),
      Grouped(ConnectionNode("datasets"), FieldGroup::kDatasets),
      Grouped(ConnectionNode("softwares"), FieldGroup::kSoftwares),
  };
  return schema;
}

const std::vector<SchemaNode>& PersonSchema() {
  static const std::vector<SchemaNode> schema = [] {
    SchemaNode topics = Object("topics", {Leaf("topic"), Leaf("id")});
    topics.either = true;
    return std::vector<SchemaNode>{
        Grouped(Leaf("id"), FieldGroup::kProfile),
        Grouped(Leaf("name"), FieldGroup::kProfile),
        Grouped(Object("employment", {Leaf("organizationName"), Leaf("organizationId"),
                                      Leaf("startDate"), Leaf("endDate")}),
                FieldGroup::kEmployment),
        Grouped(ConnectionNode("publications"), FieldGroup::kPublications),
        Grouped(ConnectionNode("datasets"), FieldGroup::kPersonDatasets),
        Grouped(ConnectionNode("softwares"), FieldGroup::kPersonSoftwares),
        Grouped(std::move(topics), FieldGroup::kPersonTopics),
    };
  }();
  return schema;
}

const std::vector<SchemaNode>& CitationCountsSchema() {
  static const std::vector<SchemaNode> schema = {
      Grouped(Leaf("doi"), FieldGroup::kCitationCounts),
      Grouped(Leaf("citationCount"), FieldGroup::kCitationCounts),
  };
  return schema;
}

Error SchemaErrorAt(const query::Field& field, const std::string& message) {
  return MakeError(ErrorKind::kSchemaError, std::to_string(field.line) + ":" +
                                                std::to_string(field.column) + ": " +
                                                message);
}

void MergeInto(std::vector<Selection>& into, Selection selection) {
  for (Selection& existing : into) {
    if (existing.name != selection.name) continue;
    for (Selection& child : selection.children) MergeInto(existing.children, std::move(child));
    return;
  }
  into.push_back(std::move(selection));
}

Result<std::vector<Selection>> ValidateSelections(
    const std::vector<query::Field>& fields, const std::vector<SchemaNode>& schema,
    const std::string& parent, std::set<FieldGroup>* groups) {
  std::vector<Selection> out;
  for (const query::Field& field : fields) {
    auto it = std::find_if(schema.begin(), schema.end(),
                           [&](const SchemaNode& n) { return n.name == field.name; });
    if (it == schema.end()) {
      return SchemaErrorAt(field, "unknown field '" + field.name + "' on " + parent);
    }
    if (!field.arguments.empty()) {
      return SchemaErrorAt(field, "field '" + field.name + "' takes no arguments");
    }
    Selection selection{field.name, {}, false};
    if (it->object() && field.has_selection_set) {
      Result<std::vector<Selection>> children =
          ValidateSelections(field.selections, it->children, field.name, nullptr);
      if (!children.ok()) return children.error();
      selection.children = std::move(*children);
      selection.object = true;
    } else if (it->object() && !it->either) {
      return SchemaErrorAt(field, "field '" + field.name + "' needs a selection set");
    } else if (!it->object() && field.has_selection_set) {
      return SchemaErrorAt(field, "field '" + field.name + "' has no subfields");
    }
    if (groups != nullptr && it->group) groups->insert(*it->group);
    MergeInto(out, std::move(selection));
  }
  return out;
}

Result<nlohmann::json> ArgumentValue(const query::Field& root, const query::Document& doc,
                                     const nlohmann::json& variables,
                                     std::string_view expected) {
  for (const auto& [name, value] : root.arguments) {
    if (name != expected) {
      return SchemaErrorAt(root, "unknown argument '" + name + "' on " + root.name);
    }
  }
  const query::Value* value = root.Argument(expected);
  if (value == nullptr) {
    return SchemaErrorAt(root, root.name + " requires argument '" + std::string(expected) + "'");
  }
  return query::Resolve(*value, doc, variables);
}

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteSelection(const SchemaNode& node, bool leaf_form, std::string& out) {
  out += node.name;
  if (!node.object() || leaf_form) return;
  out += " {";
  for (const SchemaNode& child : node.children) {
    out += " ";
    WriteSelection(child, false, out);
  }
  out += " }";
}

Result<std::string> RootText(std::string head, const std::vector<SchemaNode>& schema,
                             const std::vector<std::string>& fields,
                             const std::vector<std::string>& defaults,
                             std::string_view root_name) {
  const std::vector<std::string>& wanted = fields.empty() ? defaults : fields;
  std::string body;
  for (const std::string& name : wanted) {
    auto it = std::find_if(schema.begin(), schema.end(),
                           [&](const SchemaNode& n) { return n.name == name; });
    if (it == schema.end()) {
      return MakeError(ErrorKind::kSchemaError, "unknown field '" + name + "' on " +
                                                    std::string(root_name));
    }
    body += " ";
    WriteSelection(*it, it->either, body);
  }
  return "{ " + head + " {" + body + " } }";
}

std::vector<std::string> Names(const std::vector<SchemaNode>& schema) {
  std::vector<std::string> names;
  for (const SchemaNode& node : schema) names.push_back(node.name);
  return names;
}

}  // namespace

std::string_view FieldGroupName(FieldGroup group) {
  switch (group) {
    case FieldGroup::kMetadata: return "metadata";
    case FieldGroup::kCitations: return "citations";
    case FieldGroup::kReferences: return "references";
    case FieldGroup::kProjects: return "project";
    case FieldGroup::kTopics: return "topicDetails";
    case FieldGroup::kMetrics: return "metricsInformation";
    case FieldGroup::kDatasets: return "datasets";
    case FieldGroup::kSoftwares: return "softwares";
    case FieldGroup::kProfile: return "profile";
    case FieldGroup::kEmployment: return "employment";
    case FieldGroup::kPublications: return "publications";
    case FieldGroup::kPersonDatasets: return "datasets";
    case FieldGroup::kPersonSoftwares: return "softwares";
    case FieldGroup::kPersonTopics: return "topics";
    case FieldGroup::kCitationCounts: return "citationCounts";
  }
  return "unknown";
}

Source FieldGroupSource(FieldGroup group) {
  switch (group) {
    case FieldGroup::kMetadata:
    case FieldGroup::kCitations:
    case FieldGroup::kReferences:
    case FieldGroup::kCitationCounts:
      return Source::kArticles;
    case FieldGroup::kProjects:
      return Source::kProjects;
    case FieldGroup::kTopics:
    case FieldGroup::kPersonTopics:
      return Source::kTopics;
    case FieldGroup::kMetrics:
      return Source::kMetrics;
    case FieldGroup::kDatasets:
    case FieldGroup::kSoftwares:
    case FieldGroup::kProfile:
    case FieldGroup::kEmployment:
    case FieldGroup::kPublications:
    case FieldGroup::kPersonDatasets:
    case FieldGroup::kPersonSoftwares:
      return Source::kPidGraph;
  }
  return Source::kArticles;
}

std::string_view OperationName(Operation op) {
  switch (op) {
    case Operation::kWorkCore: return "work_core";
    case Operation::kProjects: return "projects";
    case Operation::kTopics: return "topics";
    case Operation::kMetrics: return "metrics";
    case Operation::kRelatedArtifacts: return "related_artifacts";
    case Operation::kPerson: return "person";
    case Operation::kPersonTopics: return "person_topics";
    case Operation::kCitationCount: return "citation_count";
  }
  return "unknown";
}

Result<QueryPlan> Plan(const query::Document& document, const nlohmann::json& variables) {
  if (document.roots.size() != 1) {
    return MakeError(ErrorKind::kSchemaError,
                     "a query selects exactly one root field, got " +
                         std::to_string(document.roots.size()));
  }
  const query::Field& root = document.roots.front();
  QueryPlan plan;
  auto add = [&plan](Source source, Operation op, const std::string& key, bool is_root) {
    SubRequest request{source, op, key, is_root};
    for (const SubRequest& existing : plan.sub_requests) {
      if (existing.source == source && existing.key == key) return;
    }
    plan.sub_requests.push_back(std::move(request));
  };
  if (!root.has_selection_set) {
    return SchemaErrorAt(root, "root field '" + root.name + "' needs a selection set");
  }

  if (root.name == "paper") {
    Result<nlohmann::json> arg = ArgumentValue(root, document, variables, "doi");
    if (!arg.ok()) return arg.error();
    if (!arg->is_string()) return SchemaErrorAt(root, "argument 'doi' must be a string");
    Result<Doi> doi = NormalizeDoi(arg->get<std::string>());
    if (!doi.ok()) return doi.error();
    Result<std::vector<Selection>> selection =
        ValidateSelections(root.selections, PaperSchema(), "paper", &plan.groups);
    if (!selection.ok()) return selection.error();
    plan.root = RootKind::kPaper;
    plan.keys = {doi->value()};
    plan.selection = std::move(*selection);
    add(Source::kArticles, Operation::kWorkCore, doi->value(), true);
    if (plan.groups.contains(FieldGroup::kProjects)) {
      add(Source::kProjects, Operation::kProjects, doi->value(), false);
    }
    if (plan.groups.contains(FieldGroup::kTopics)) {
      add(Source::kTopics, Operation::kTopics, doi->value(), false);
    }
    if (plan.groups.contains(FieldGroup::kMetrics)) {
      add(Source::kMetrics, Operation::kMetrics, doi->value(), false);
    }
    if (plan.groups.contains(FieldGroup::kDatasets) ||
        plan.groups.contains(FieldGroup::kSoftwares)) {
      add(Source::kPidGraph, Operation::kRelatedArtifacts, doi->value(), false);
    }
    return plan;
  }

  if (root.name == "person") {
    Result<nlohmann::json> arg = ArgumentValue(root, document, variables, "id");
    if (!arg.ok()) return arg.error();
    if (!arg->is_string()) return SchemaErrorAt(root, "argument 'id' must be a string");
    Result<OrcidId> orcid = NormalizeOrcid(arg->get<std::string>());
    if (!orcid.ok()) return orcid.error();
    Result<std::vector<Selection>> selection =
        ValidateSelections(root.selections, PersonSchema(), "person", &plan.groups);
    if (!selection.ok()) return selection.error();
    plan.root = RootKind::kPerson;
    plan.keys = {orcid->value()};
    plan.selection = std::move(*selection);
    add(Source::kPidGraph, Operation::kPerson, orcid->value(), true);
    if (plan.groups.contains(FieldGroup::kPersonTopics)) {
      add(Source::kTopics, Operation::kPersonTopics, orcid->value(), false);
    }
    return plan;
  }

  if (root.name == "citationCounts") {
    Result<nlohmann::json> arg = ArgumentValue(root, document, variables, "dois");
    if (!arg.ok()) return arg.error();
    if (arg->is_string()) *arg = nlohmann::json::array({*arg});
    if (!arg->is_array() || arg->empty()) {
      return SchemaErrorAt(root, "argument 'dois' must be a non-empty list of strings");
    }
    Result<std::vector<Selection>> selection = ValidateSelections(
        root.selections, CitationCountsSchema(), "citationCounts", &plan.groups);
    if (!selection.ok()) return selection.error();
    plan.root = RootKind::kComparisonCitations;
    plan.selection = std::move(*selection);
    for (const nlohmann::json& item : *arg) {
      if (!item.is_string()) {
        return SchemaErrorAt(root, "argument 'dois' must be a non-empty list of strings");
      }
      Result<Doi> doi = NormalizeDoi(item.get<std::string>());
      if (!doi.ok()) return doi.error();
      if (std::find(plan.keys.begin(), plan.keys.end(), doi->value()) == plan.keys.end()) {
        plan.keys.push_back(doi->value());
      }
      add(Source::kArticles, Operation::kCitationCount, doi->value(), false);
    }
    return plan;
  }

  return SchemaErrorAt(root, "unknown root field '" + root.name +
                                 "'; expected paper, person or citationCounts");
}

Result<QueryPlan> PlanQueryText(std::string_view text, const nlohmann::json& variables) {
  Result<query::Document> document = query::Parse(text);
  if (!document.ok()) return document.error();
  return Plan(*document, variables);
}

std::vector<std::string> PaperFieldNames() { return Names(PaperSchema()); }
std::vector<std::string> PersonFieldNames() { return Names(PersonSchema()); }

Result<std::string> PaperQueryText(const Doi& doi, const std::vector<std::string>& fields) {
  static const std::vector<std::string> kDefaults = {
      "doi",     "title",        "abstract",          "citations",
      "references", "project", "topicDetails", "metricsInformation"};
  return RootText("paper(doi: " + Quote(doi.value()) + ")", PaperSchema(), fields,
                  kDefaults, "paper");
}

Result<std::string> PersonQueryText(const OrcidId& orcid,
                                    const std::vector<std::string>& fields) {
  return RootText("person(id: " + Quote(orcid.url()) + ")", PersonSchema(), fields,
                  PersonFieldNames(), "person");
}

std::string CitationCountsQueryText(const std::vector<Doi>& dois) {
  std::string list;
  for (const Doi& doi : dois) {
    if (!list.empty()) list += ", ";
    list += Quote(doi.value());
  }
  return "{ citationCounts(dois: [" + list + "]) { doi citationCount } }";
}

}  // namespace scholarfed
