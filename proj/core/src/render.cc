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

#include "scholarfed/render.h"

#include <functional>
#include <string>

namespace scholarfed {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
Json OrNull(const std::optional<T>& value) {
  return value ? Json(*value) : Json(nullptr);
}

// Renders one object by dispatching each selected child to `field`.
template <typename Fn>
Json RenderObject(const std::vector<Selection>& selection, Fn&& field) {
  Json out = Json::object();
  for (const Selection& s : selection) out[s.name] = field(s);
  return out;
}

template <typename T, typename Fn>
Json RenderList(const std::vector<T>& items, const Selection& selection, Fn&& field) {
  Json out = Json::array();
  for (const T& item : items) {
    out.push_back(RenderObject(selection.children,
                               [&](const Selection& s) { return field(item, s); }));
  }
  return out;
}

Json RenderRef(const WorkRef& ref, const Selection& s) {
  if (s.name == "title") return ref.title;
  if (s.name == "doi") return ref.doi ? Json(ref.doi->value()) : Json(nullptr);
  return nullptr;
}

Json RenderProject(const Project& project, const Selection& s) {
  if (s.name == "funder") return project.funder;
  if (s.name == "project") return project.project_name;
  if (s.name == "awardNumber") return OrNull(project.award_number);
  return nullptr;
}

Json RenderTopic(const Topic& topic, const Selection& s) {
  if (s.name == "topic") return topic.label;
  if (s.name == "id") return OrNull(topic.topic_id);
  return nullptr;
}

Json RenderCreator(const Creator& creator, const Selection& s) {
  if (s.name == "givenName") return creator.given_name;
  if (s.name == "familyName") return creator.family_name;
  if (s.name == "id") return creator.id ? Json(creator.id->url()) : Json(nullptr);
  return nullptr;
}

Json RenderFunding(const Project& project, const Selection& s) {
  if (s.name == "awardTitle") return project.project_name;
  if (s.name == "awardNumber") return OrNull(project.award_number);
  if (s.name == "funderName") return project.funder;
  return nullptr;
}

Json RenderNode(const ArtifactNode& node, const Selection& s) {
  if (s.name == "id") return node.id;
  if (s.name == "type") return ArtifactTypeName(node.type);
  if (s.name == "titles") {
    Json titles = Json::array();
    for (const std::string& title : node.titles) {
      titles.push_back(RenderObject(s.children, [&](const Selection& c) {
        return c.name == "title" ? Json(title) : Json(nullptr);
      }));
    }
    return titles;
  }
  if (s.name == "creators") return RenderList(node.creators, s, RenderCreator);
  if (s.name == "fundingReferences") return RenderList(node.funding, s, RenderFunding);
  return nullptr;
}

Json RenderConnection(const ArtifactConnection& connection, const Selection& selection) {
  return RenderObject(selection.children, [&](const Selection& s) -> Json {
    if (s.name == "totalCount") return connection.total_count;
    if (s.name == "nodes") return RenderList(connection.nodes, s, RenderNode);
    return nullptr;
  });
}

Json RenderEmployment(const EmploymentRecord& record, const Selection& s) {
  if (s.name == "organizationName") return record.organization_name;
  if (s.name == "organizationId") {
    return record.organization_id ? Json(record.organization_id->value()) : Json(nullptr);
  }
  if (s.name == "startDate") {
    return record.start_date ? Json(record.start_date->ToString()) : Json(nullptr);
  }
  if (s.name == "endDate") {
    return record.end_date ? Json(record.end_date->ToString()) : Json(nullptr);
  }
  return nullptr;
}

}  // namespace

Json RenderPaper(const std::vector<Selection>& selection, const WorkContext& work,
                 const std::set<FieldGroup>& failed) {
  const WorkCore& core = work.core;
  return RenderObject(selection, [&](const Selection& s) -> Json {
    if (s.name == "doi") return core.doi.value();
    if (s.name == "title") return core.title;
    if (s.name == "abstract") return OrNull(core.abstract);
    if (s.name == "citationCount") return OrNull(core.citation_count);
    if (s.name == "citations") return RenderList(core.citations, s, RenderRef);
    if (s.name == "references") return RenderList(core.references, s, RenderRef);
    if (s.name == "project") return RenderList(work.projects, s, RenderProject);
    if (s.name == "topicDetails") return RenderList(work.topics, s, RenderTopic);
    if (s.name == "metricsInformation") {
      if (!work.metrics || failed.contains(FieldGroup::kMetrics)) return nullptr;
      const Metrics& metrics = *work.metrics;
      return RenderObject(s.children, [&](const Selection& c) -> Json {
        if (c.name == "url") return metrics.details_url;
        if (c.name == "image") return metrics.badge_image_url;
        if (c.name == "score") return OrNull(metrics.score);
        return nullptr;
      });
    }
    if (s.name == "datasets" || s.name == "softwares") {
      const auto& connection = s.name == "datasets" ? work.datasets : work.softwares;
      if (!connection) return nullptr;
      return RenderConnection(*connection, s);
    }
    return nullptr;
  });
}

Json RenderPerson(const std::vector<Selection>& selection, const PersonContext& person,
                  const std::set<FieldGroup>& failed) {
  return RenderObject(selection, [&](const Selection& s) -> Json {
    if (s.name == "id") return person.orcid.url();
    if (s.name == "name") return person.name;
    if (s.name == "employment") return RenderList(person.employment, s, RenderEmployment);
    if (s.name == "publications") return RenderConnection(person.publications, s);
    if (s.name == "datasets") return RenderConnection(person.datasets, s);
    if (s.name == "softwares") return RenderConnection(person.softwares, s);
    if (s.name == "topics") {
      if (failed.contains(FieldGroup::kPersonTopics)) return Json::array();
      if (s.object) return RenderList(person.topics, s, RenderTopic);
      Json labels = Json::array();
      for (const Topic& topic : person.topics) labels.push_back(topic.label);
      return labels;
    }
    return nullptr;
  });
}

Json RenderCitationCounts(const std::vector<Selection>& selection,
                          const std::vector<Doi>& order, const CitationCounts& counts) {
  Json out = Json::array();
  for (const Doi& doi : order) {
    auto it = counts.find(doi);
    CitationCount count = it == counts.end() ? std::nullopt : it->second;
    out.push_back(RenderObject(selection, [&](const Selection& s) -> Json {
      if (s.name == "doi") return doi.value();
      if (s.name == "citationCount") return OrNull(count);
      return nullptr;
    }));
  }
  return out;
}

}  // namespace scholarfed
