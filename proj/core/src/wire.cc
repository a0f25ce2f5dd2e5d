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

#include "scholarfed/wire.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace scholarfed::wire {
namespace {

using nlohmann::json;

// Raised inside the mappers; converted to kMalformedUpstream at the parser
// boundary.
struct MappingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::string_view kWorkCoreFields =
    "title,abstract,citationCount,externalIds,citations.title,"
    "citations.externalIds,references.title,references.externalIds";

constexpr std::string_view kNodeFields =
    "totalCount nodes { id type titles { title } "
    "fundingReferences { funderName awardTitle awardNumber } "
    "creators { givenName familyName name id } }";

bool Is2xx(int status) { return status >= 200 && status < 300; }

json ParseBody(Source source, const std::string& body) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw MappingError(std::string(SourceName(source)) +
                       " returned a body that is not JSON");
  }
  return doc;
}

// Member lookup treating missing and null alike.
const json* Member(const json& object, std::string_view name) {
  if (!object.is_object()) return nullptr;
  auto it = object.find(name);
  if (it == object.end() || it->is_null()) return nullptr;
  return &*it;
}

const json& RequireObject(const json* value, std::string_view what) {
  if (value == nullptr || !value->is_object()) {
    throw MappingError(std::string(what) + " is not an object");
  }
  return *value;
}

// String member, or an OpenAIRE-style {"$": "..."} wrapper.
std::optional<std::string> Text(const json* value) {
  if (value == nullptr) return std::nullopt;
  if (value->is_string()) return value->get<std::string>();
  if (value->is_number_integer()) return std::to_string(value->get<std::int64_t>());
  if (value->is_object()) return Text(Member(*value, "$"));
  if (value->is_array() && !value->empty()) return Text(&value->front());
  throw MappingError("expected a string, got " + std::string(value->type_name()));
}

std::string TextOr(const json* value, std::string fallback = {}) {
  return Text(value).value_or(std::move(fallback));
}

// Arrays pass through; a lone object is treated as a one-element array.
std::vector<const json*> Items(const json* value) {
  std::vector<const json*> out;
  if (value == nullptr) return out;
  if (value->is_array()) {
    for (const json& item : *value) out.push_back(&item);
  } else if (value->is_object()) {
    out.push_back(value);
  } else {
    throw MappingError("expected a list, got " + std::string(value->type_name()));
  }
  return out;
}

std::optional<std::int64_t> NonNegativeInt(const json* value,
                                           std::string_view what) {
  if (value == nullptr) return std::nullopt;
  if (!value->is_number_integer() || value->get<std::int64_t>() < 0) {
    throw MappingError(std::string(what) + " is not a non-negative integer");
  }
  return value->get<std::int64_t>();
}

std::string Trimmed(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

template <typename T, typename F>
Result<T> Mapping(Source source, F&& map) {
  try {
    return map();
  } catch (const MappingError& e) {
    return MakeError(ErrorKind::kMalformedUpstream,
                     std::string(SourceName(source)) + ": " + e.what());
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kMalformedUpstream,
                     std::string(SourceName(source)) + ": " + e.what());
  }
}

template <typename T>
T Checked(T value) {
  if (Status s = Validate(value); !s.ok()) throw MappingError(s.error().message);
  return value;
}

std::vector<WorkRef> MapWorkRefs(const json* list) {
  std::vector<WorkRef> out;
  for (const json* item : Items(list)) {
    std::string title = Trimmed(TextOr(Member(*item, "title")));
    if (title.empty()) continue;
    WorkRef ref{std::move(title), std::nullopt};
    if (const json* ids = Member(*item, "externalIds")) {
      if (auto raw = Text(Member(*ids, "DOI"))) {
        if (Result<Doi> doi = NormalizeDoi(*raw); doi.ok()) ref.doi = *doi;
      }
    }
    out.push_back(std::move(ref));
  }
  return out;
}

ArtifactType TypeFromLabel(std::string_view label, ArtifactType fallback) {
  std::string folded = FoldCase(label);
  if (folded.empty()) return fallback;
  if (folded.find("dataset") != std::string::npos) return ArtifactType::kDataset;
  if (folded.find("software") != std::string::npos) return ArtifactType::kSoftware;
  static const std::set<std::string, std::less<>> kPublication = {
      "text", "scholarlyarticle", "journalarticle", "article", "preprint",
      "publication", "conferencepaper", "bookchapter", "book", "report",
      "thesis", "dissertation", "journal-article", "posted-content"};
  if (kPublication.count(folded) != 0) return ArtifactType::kPublication;
  return ArtifactType::kOther;
}

Creator MapCreator(const json& item) {
  Creator creator;
  creator.given_name = Trimmed(TextOr(Member(item, "givenName")));
  creator.family_name = Trimmed(TextOr(Member(item, "familyName")));
  if (creator.given_name.empty() && creator.family_name.empty()) {
    creator.family_name = Trimmed(TextOr(Member(item, "name")));
  }
  if (auto id = Text(Member(item, "id")); id && LooksLikeOrcid(*id)) {
    if (Result<OrcidId> orcid = NormalizeOrcid(*id); orcid.ok()) {
      creator.id = *orcid;
    }
  }
  return creator;
}

ArtifactConnection MapConnection(const json* connection, ArtifactType kind) {
  ArtifactConnection out;
  if (connection == nullptr) return out;
  RequireObject(connection, "artifact connection");
  for (const json* node : Items(Member(*connection, "nodes"))) {
    ArtifactNode artifact;
    artifact.id = Trimmed(TextOr(Member(*node, "id")));
    if (artifact.id.empty()) throw MappingError("artifact node without id");
    artifact.type = TypeFromLabel(TextOr(Member(*node, "type")), kind);
    for (const json* title : Items(Member(*node, "titles"))) {
      std::string text = Trimmed(TextOr(Member(*title, "title")));
      if (!text.empty()) artifact.titles.push_back(std::move(text));
    }
    if (artifact.titles.empty() && artifact.type != ArtifactType::kOther) {
      continue;
    }
    for (const json* item : Items(Member(*node, "creators"))) {
      Creator creator = MapCreator(*item);
      if (!creator.given_name.empty() || !creator.family_name.empty()) {
        artifact.creators.push_back(std::move(creator));
      }
    }
    for (const json* item : Items(Member(*node, "fundingReferences"))) {
      Project project;
      project.funder = Trimmed(TextOr(Member(*item, "funderName")));
      project.project_name = Trimmed(TextOr(Member(*item, "awardTitle")));
      if (auto award = Text(Member(*item, "awardNumber")); award && !award->empty()) {
        project.award_number = *award;
      }
      if (!project.funder.empty() || !project.project_name.empty()) {
        artifact.funding.push_back(std::move(project));
      }
    }
    out.nodes.push_back(std::move(artifact));
  }
  out.total_count = NonNegativeInt(Member(*connection, "totalCount"), "totalCount")
                        .value_or(static_cast<std::int64_t>(out.nodes.size()));
  return Checked(std::move(out));
}

std::optional<PartialDate> MapDate(const json* value) {
  auto text = Text(value);
  if (!text || Trimmed(*text).empty()) return std::nullopt;
  Result<PartialDate> date = PartialDate::Parse(Trimmed(*text));
  if (!date.ok()) throw MappingError(date.error().message);
  return *date;
}

// DataCite answers `{"data": {"<root>": null}}` for unknown ids.
const json* GraphQlRoot(const json& doc, std::string_view root) {
  const json* data = Member(doc, "data");
  if (data == nullptr) {
    std::string message = "GraphQL response without data";
    if (const json* errors = Member(doc, "errors"); errors && errors->is_array() &&
                                                    !errors->empty()) {
      message += ": " + TextOr(Member(errors->front(), "message"));
    }
    throw MappingError(message);
  }
  RequireObject(data, "data");
  return Member(*data, root);
}

std::string GraphQlBody(std::string_view query, const std::string& id) {
  json body = {{"query", query}, {"variables", {{"id", id}}}};
  return body.dump();
}

std::string SparqlForSubjects(std::string_view property, std::string_view value,
                              std::string_view subject_property) {
  std::string q;
  q += "SELECT ?topic ?topicLabel WHERE {\n";
  q += "  ?item wdt:";
  q += property;
  q += " \"";
  q += value;
  q += "\" .\n  ?item wdt:";
  q += subject_property;
  q += " ?topic .\n";
  q += "  SERVICE wikibase:label { bd:serviceParam wikibase:language \"en\". }\n";
  q += "}";
  return q;
}

std::string Upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::toupper(c));
  });
  return s;
}

std::optional<std::string> Param(const Params& params, std::string_view name) {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  return std::nullopt;
}

std::optional<std::string> CanonicalDoi(std::string_view raw) {
  Result<Doi> doi = NormalizeDoi(raw);
  if (!doi.ok()) return std::nullopt;
  return doi->value();
}

std::optional<std::string> CanonicalPid(std::string_view raw) {
  if (LooksLikeOrcid(raw)) {
    Result<OrcidId> orcid = NormalizeOrcid(raw);
    if (orcid.ok()) return orcid->value();
    return std::nullopt;
  }
  return CanonicalDoi(raw);
}

}  // namespace

std::string FoldCase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return Trimmed(std::move(out));
}

Error StatusError(Source source, int status) {
  std::string prefix =
      std::string(SourceName(source)) + ": HTTP " + std::to_string(status);
  if (status == 404) return MakeError(ErrorKind::kNotFound, prefix);
  if (status == 429) return MakeError(ErrorKind::kRateLimited, prefix);
  if (status >= 500 || status == 401 || status == 403) {
    return MakeError(ErrorKind::kUpstreamUnavailable, prefix);
  }
  return MakeError(ErrorKind::kMalformedUpstream, prefix + " is unexpected");
}

// ---- articles_api ---------------------------------------------------------

UpstreamRequest WorkCoreRequest(const Doi& doi) {
  UpstreamRequest request{Source::kArticles, doi.value()};
  request.path = "/graph/v1/paper/DOI:" + doi.value();
  request.params = {{"fields", std::string(kWorkCoreFields)}};
  return request;
}

UpstreamRequest CitationCountRequest(const Doi& doi) {
  UpstreamRequest request{Source::kArticles, doi.value()};
  request.path = "/graph/v1/paper/DOI:" + doi.value();
  request.params = {{"fields", "citationCount"}};
  return request;
}

Result<WorkCore> ParseWorkCore(const Doi& doi, const UpstreamResponse& response) {
  if (!Is2xx(response.status)) return StatusError(Source::kArticles, response.status);
  return Mapping<WorkCore>(Source::kArticles, [&] {
    json doc = ParseBody(Source::kArticles, response.body);
    RequireObject(&doc, "paper");
    WorkCore core{doi, Trimmed(TextOr(Member(doc, "title")))};
    if (auto abstract = Text(Member(doc, "abstract")); abstract && !abstract->empty()) {
      core.abstract = *abstract;
    }
    core.citations = MapWorkRefs(Member(doc, "citations"));
    core.references = MapWorkRefs(Member(doc, "references"));
    core.citation_count = NonNegativeInt(Member(doc, "citationCount"), "citationCount");
    return Checked(std::move(core));
  });
}

Result<CitationCount> ParseCitationCount(const UpstreamResponse& response) {
  if (response.status == 404) return CitationCount{};
  if (!Is2xx(response.status)) return StatusError(Source::kArticles, response.status);
  return Mapping<CitationCount>(Source::kArticles, [&] {
    json doc = ParseBody(Source::kArticles, response.body);
    RequireObject(&doc, "paper");
    return NonNegativeInt(Member(doc, "citationCount"), "citationCount");
  });
}

// ---- projects_api ---------------------------------------------------------

UpstreamRequest ProjectsRequest(const Doi& doi) {
  UpstreamRequest request{Source::kProjects, doi.value()};
  request.path = "/search/publications";
  request.params = {{"doi", doi.value()}, {"format", "json"}};
  return request;
}

Result<std::vector<Project>> ParseProjects(const UpstreamResponse& response) {
  if (response.status == 404) return std::vector<Project>{};
  if (!Is2xx(response.status)) return StatusError(Source::kProjects, response.status);
  return Mapping<std::vector<Project>>(Source::kProjects, [&] {
    json doc = ParseBody(Source::kProjects, response.body);
    std::vector<Project> out;
    std::set<std::pair<std::string, std::string>> seen;
    const json* results = Member(RequireObject(Member(doc, "response"), "response"),
                                 "results");
    if (results == nullptr) return out;
    for (const json* result : Items(Member(RequireObject(results, "results"), "result"))) {
      const json* entity = Member(*result, "metadata");
      if (entity) entity = Member(*entity, "oaf:entity");
      if (entity) entity = Member(*entity, "oaf:result");
      if (entity) entity = Member(*entity, "rels");
      if (entity == nullptr) continue;
      for (const json* rel : Items(Member(*entity, "rel"))) {
        const json* to = Member(*rel, "to");
        if (to == nullptr || TextOr(Member(*to, "@type")) != "project") continue;
        Project project;
        if (const json* funding = Member(*rel, "funding")) {
          std::vector<const json*> fundings = Items(funding);
          if (!fundings.empty()) {
            if (const json* funder = Member(*fundings.front(), "funder")) {
              project.funder = Trimmed(TextOr(Member(*funder, "@name"),
                                              TextOr(Member(*funder, "@shortname"))));
            }
          }
        }
        project.project_name = Trimmed(TextOr(Member(*rel, "title"),
                                              TextOr(Member(*rel, "acronym"))));
        if (auto code = Text(Member(*rel, "code"));
            code && !code->empty() && *code != "unidentified") {
          project.award_number = *code;
        }
        if (project.funder.empty() && project.project_name.empty()) continue;
        if (!seen.emplace(project.funder, project.project_name).second) continue;
        out.push_back(std::move(project));
      }
    }
    return out;
  });
}

// ---- topics_api -----------------------------------------------------------

UpstreamRequest TopicsRequest(const Doi& doi) {
  UpstreamRequest request{Source::kTopics, doi.value()};
  request.path = "/sparql";
  // Wikidata stores DOIs upper-cased; P921 is "main subject".
  request.params = {{"query", SparqlForSubjects("P356", Upper(doi.value()), "P921")},
                    {"format", "json"}};
  request.headers = {{"Accept", "application/sparql-results+json"}};
  return request;
}

UpstreamRequest PersonTopicsRequest(const OrcidId& orcid) {
  UpstreamRequest request{Source::kTopics, orcid.value()};
  request.path = "/sparql";
  // P496 is the ORCID iD property, P101 "field of work".
  request.params = {{"query", SparqlForSubjects("P496", orcid.value(), "P101")},
                    {"format", "json"}};
  request.headers = {{"Accept", "application/sparql-results+json"}};
  return request;
}

Result<std::vector<Topic>> ParseTopics(const UpstreamResponse& response) {
  if (response.status == 404) return std::vector<Topic>{};
  if (!Is2xx(response.status)) return StatusError(Source::kTopics, response.status);
  return Mapping<std::vector<Topic>>(Source::kTopics, [&] {
    json doc = ParseBody(Source::kTopics, response.body);
    const json& results = RequireObject(Member(doc, "results"), "results");
    std::vector<Topic> out;
    std::set<std::string> seen;
    for (const json* binding : Items(Member(results, "bindings"))) {
      RequireObject(binding, "binding");
      Topic topic;
      if (const json* label = Member(*binding, "topicLabel")) {
        topic.label = Trimmed(TextOr(Member(*label, "value")));
      }
      if (topic.label.empty()) continue;
      if (const json* uri = Member(*binding, "topic")) {
        std::string value = TextOr(Member(*uri, "value"));
        if (auto slash = value.rfind('/'); slash != std::string::npos) {
          value = value.substr(slash + 1);
        }
        if (!value.empty()) topic.topic_id = value;
      }
      if (!seen.insert(FoldCase(topic.label)).second) continue;
      out.push_back(std::move(topic));
    }
    return out;
  });
}

// ---- metrics_api ----------------------------------------------------------

UpstreamRequest MetricsRequest(const Doi& doi,
                               const std::optional<std::string>& api_key) {
  UpstreamRequest request{Source::kMetrics, doi.value()};
  request.path = "/v1/doi/" + doi.value();
  if (api_key && !api_key->empty()) request.params = {{"key", *api_key}};
  return request;
}

Result<std::optional<Metrics>> ParseMetrics(const UpstreamResponse& response) {
  if (response.status == 404) return std::optional<Metrics>{};
  if (!Is2xx(response.status)) return StatusError(Source::kMetrics, response.status);
  return Mapping<std::optional<Metrics>>(Source::kMetrics, [&] {
    json doc = ParseBody(Source::kMetrics, response.body);
    RequireObject(&doc, "metrics");
    Metrics metrics;
    metrics.details_url = TextOr(Member(doc, "details_url"));
    if (const json* images = Member(doc, "images")) {
      metrics.badge_image_url =
          TextOr(Member(*images, "medium"),
                 TextOr(Member(*images, "small"), TextOr(Member(*images, "large"))));
    }
    if (const json* score = Member(doc, "score")) {
      if (!score->is_number()) throw MappingError("score is not a number");
      metrics.score = score->get<double>();
    }
    return std::optional<Metrics>(Checked(std::move(metrics)));
  });
}

// ---- pid_graph ------------------------------------------------------------

UpstreamRequest PersonRequest(const OrcidId& orcid) {
  UpstreamRequest request{Source::kPidGraph, orcid.value()};
  request.method = "POST";
  request.path = "/graphql";
  request.content_type = "application/json";
  std::string query =
      "query PersonContext($id: ID!) { person(id: $id) { id name givenName "
      "familyName employment { organizationName organizationId startDate "
      "endDate } publications(first: 25) { " + std::string(kNodeFields) +
      " } datasets(first: 25) { " + std::string(kNodeFields) +
      " } softwares(first: 25) { " + std::string(kNodeFields) + " } } }";
  request.body = GraphQlBody(query, orcid.url());
  return request;
}

UpstreamRequest RelatedArtifactsRequest(const Doi& doi) {
  UpstreamRequest request{Source::kPidGraph, doi.value()};
  request.method = "POST";
  request.path = "/graphql";
  request.content_type = "application/json";
  std::string query =
      "query WorkArtifacts($id: ID!) { work(id: $id) { id datasets(first: "
      "25) { " + std::string(kNodeFields) + " } softwares(first: 25) { " +
      std::string(kNodeFields) + " } } }";
  request.body = GraphQlBody(query, doi.url());
  return request;
}

Result<PersonRecord> ParsePerson(const OrcidId& orcid,
                                 const UpstreamResponse& response) {
  if (!Is2xx(response.status)) return StatusError(Source::kPidGraph, response.status);
  auto mapped = Mapping<std::optional<PersonRecord>>(Source::kPidGraph, [&] {
    json doc = ParseBody(Source::kPidGraph, response.body);
    const json* person = GraphQlRoot(doc, "person");
    if (person == nullptr) return std::optional<PersonRecord>{};
    RequireObject(person, "person");
    if (auto id = Text(Member(*person, "id"))) {
      Result<OrcidId> served = NormalizeOrcid(*id);
      if (!served.ok() || *served != orcid) {
        throw MappingError("person record is for '" + *id + "', not " + orcid.value());
      }
    }
    PersonRecord record{orcid};
    record.name = Trimmed(TextOr(Member(*person, "name")));
    if (record.name.empty()) {
      record.name = Trimmed(TextOr(Member(*person, "givenName")) + " " +
                            TextOr(Member(*person, "familyName")));
    }
    for (const json* item : Items(Member(*person, "employment"))) {
      EmploymentRecord employment;
      employment.organization_name = Trimmed(TextOr(Member(*item, "organizationName")));
      if (employment.organization_name.empty()) continue;
      if (auto org = Text(Member(*item, "organizationId")); org && !org->empty()) {
        employment.organization_id = *OrgId::Make(*org);
      }
      employment.start_date = MapDate(Member(*item, "startDate"));
      employment.end_date = MapDate(Member(*item, "endDate"));
      record.employment.push_back(Checked(std::move(employment)));
    }
    SortEmployment(record.employment);
    record.publications =
        MapConnection(Member(*person, "publications"), ArtifactType::kPublication);
    record.datasets = MapConnection(Member(*person, "datasets"), ArtifactType::kDataset);
    record.softwares =
        MapConnection(Member(*person, "softwares"), ArtifactType::kSoftware);
    return std::optional<PersonRecord>(Checked(std::move(record)));
  });
  if (!mapped.ok()) return mapped.error();
  if (!mapped->has_value()) {
    return MakeError(ErrorKind::kNotFound, "pid_graph: no person " + orcid.value());
  }
  return std::move(**mapped);
}

Result<RelatedArtifacts> ParseRelatedArtifacts(const UpstreamResponse& response) {
  if (response.status == 404) return RelatedArtifacts{};
  if (!Is2xx(response.status)) return StatusError(Source::kPidGraph, response.status);
  return Mapping<RelatedArtifacts>(Source::kPidGraph, [&] {
    json doc = ParseBody(Source::kPidGraph, response.body);
    const json* work = GraphQlRoot(doc, "work");
    RelatedArtifacts related;
    if (work == nullptr) return related;
    RequireObject(work, "work");
    related.datasets = MapConnection(Member(*work, "datasets"), ArtifactType::kDataset);
    related.softwares = MapConnection(Member(*work, "softwares"), ArtifactType::kSoftware);
    return Checked(std::move(related));
  });
}

// ---- request shape recognition --------------------------------------------

std::optional<std::string> ExtractKey(Source source, std::string_view method,
                                      std::string_view path, const Params& params,
                                      std::string_view body) {
  switch (source) {
    case Source::kArticles: {
      constexpr std::string_view kPrefix = "/graph/v1/paper/DOI:";
      if (method != "GET" || path.substr(0, kPrefix.size()) != kPrefix) break;
      return CanonicalDoi(path.substr(kPrefix.size()));
    }
    case Source::kProjects: {
      if (method != "GET" || path != "/search/publications") break;
      if (auto doi = Param(params, "doi")) return CanonicalDoi(*doi);
      break;
    }
    case Source::kTopics: {
      if (method != "GET" || path != "/sparql") break;
      auto query = Param(params, "query");
      if (!query) break;
      static const std::regex kPid(R"re(wdt:P(356|496)\s+"([^"]+)")re");
      std::smatch match;
      if (!std::regex_search(*query, match, kPid)) break;
      return CanonicalPid(match[2].str());
    }
    case Source::kMetrics: {
      constexpr std::string_view kPrefix = "/v1/doi/";
      if (method != "GET" || path.substr(0, kPrefix.size()) != kPrefix) break;
      return CanonicalDoi(path.substr(kPrefix.size()));
    }
    case Source::kPidGraph: {
      if (method != "POST" || path != "/graphql") break;
      json doc = json::parse(body, nullptr, false);
      if (doc.is_discarded()) break;
      const json* variables = Member(doc, "variables");
      if (variables == nullptr) break;
      const json* id = Member(*variables, "id");
      if (id == nullptr || !id->is_string()) break;
      return CanonicalPid(id->get<std::string>());
    }
  }
  return std::nullopt;
}

}  // namespace scholarfed::wire
