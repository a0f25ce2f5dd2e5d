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

#include "scholarfed/gateway.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "scholarfed/render.h"
#include "scholarfed/scenario.h"

namespace scholarfed {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool done = false;
  std::optional<SourcePayload> payload;
  std::optional<Error> error;
  double elapsed_ms = 0;
  bool from_cache = false;
};

struct FanOut {
  std::mutex mu;
  std::condition_variable cv;
  std::vector<Outcome> outcomes;
  std::size_t remaining = 0;
  std::atomic<std::size_t> next{0};
};

template <typename T>
Result<SourcePayload> Wrap(Result<T> result) {
  if (!result.ok()) return result.error();
  return SourcePayload(std::move(*result));
}

Result<SourcePayload> Fetch(const Connectors& connectors, const SubRequest& request) {
  switch (request.op) {
    case Operation::kPerson:
    case Operation::kPersonTopics: {
      Result<OrcidId> orcid = NormalizeOrcid(request.key);
      if (!orcid.ok()) return orcid.error();
      if (request.op == Operation::kPerson) return Wrap(connectors.FetchPerson(*orcid));
      return Wrap(connectors.FetchPersonTopics(*orcid));
    }
    default:
      break;
  }
  Result<Doi> doi = NormalizeDoi(request.key);
  if (!doi.ok()) return doi.error();
  switch (request.op) {
    case Operation::kWorkCore: return Wrap(connectors.FetchWorkCore(*doi));
    case Operation::kProjects: return Wrap(connectors.FetchProjects(*doi));
    case Operation::kTopics: return Wrap(connectors.FetchTopics(*doi));
    case Operation::kMetrics: return Wrap(connectors.FetchMetrics(*doi));
    case Operation::kRelatedArtifacts: return Wrap(connectors.FetchRelatedArtifacts(*doi));
    case Operation::kCitationCount: return Wrap(connectors.FetchCitationCount(*doi));
    default: break;
  }
  return MakeError(ErrorKind::kInvalidArgument, "unsupported operation");
}

void RunSubRequest(const Connectors& connectors, ResponseCache* cache,
                   const SubRequest& request, Outcome& outcome) {
  auto start = Clock::now();
  CacheKey key{request.source, request.op, request.key};
  if (cache != nullptr) {
    if (std::optional<SourceResult> hit = cache->Get(key)) {
      outcome.payload = std::move(hit->payload);
      outcome.from_cache = true;
      outcome.elapsed_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      return;
    }
  }
  Result<SourcePayload> result = Fetch(connectors, request);
  outcome.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (!result.ok()) {
    outcome.error = result.error();
    return;
  }
  if (cache != nullptr) {
    cache->Put(key, SourceResult{request.source, request.key, *result,
                                 std::chrono::system_clock::now(), false});
  }
  outcome.payload = std::move(*result);
}

std::vector<FieldGroup> GroupsServedBy(Operation op) {
  switch (op) {
    case Operation::kWorkCore:
      return {FieldGroup::kMetadata, FieldGroup::kCitations, FieldGroup::kReferences};
    case Operation::kProjects: return {FieldGroup::kProjects};
    case Operation::kTopics: return {FieldGroup::kTopics};
    case Operation::kMetrics: return {FieldGroup::kMetrics};
    case Operation::kRelatedArtifacts:
      return {FieldGroup::kDatasets, FieldGroup::kSoftwares};
    case Operation::kPerson:
      return {FieldGroup::kProfile, FieldGroup::kEmployment, FieldGroup::kPublications,
              FieldGroup::kPersonDatasets, FieldGroup::kPersonSoftwares};
    case Operation::kPersonTopics: return {FieldGroup::kPersonTopics};
    case Operation::kCitationCount: return {FieldGroup::kCitationCounts};
  }
  return {};
}

std::map<std::string, Source> Attribute(const QueryPlan& plan,
                                        const std::vector<Outcome>& outcomes) {
  std::map<std::string, Source> attribution;
  for (std::size_t i = 0; i < plan.sub_requests.size(); ++i) {
    if (!outcomes[i].payload) continue;
    for (FieldGroup group : GroupsServedBy(plan.sub_requests[i].op)) {
      if (plan.groups.contains(group)) {
        attribution.emplace(std::string(FieldGroupName(group)), FieldGroupSource(group));
      }
    }
  }
  return attribution;
}

}  // namespace

std::map<std::string, Source> FederatedResponse::attribution() const {
  if (work) return work->attribution;
  if (person) return person->attribution;
  if (citation_counts && data) return {{"citationCounts", Source::kArticles}};
  return {};
}

nlohmann::ordered_json ToJson(const FederatedResponse& response, bool include_timing) {
  nlohmann::ordered_json out;
  out["data"] = response.data ? *response.data : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const ErrorEntry& error : response.errors) {
    errors.push_back({{"source", SourceName(error.source)},
                      {"key", error.key},
                      {"kind", ErrorKindName(error.kind)},
                      {"message", error.message}});
  }
  out["errors"] = std::move(errors);
  nlohmann::ordered_json attribution = nlohmann::ordered_json::object();
  for (const auto& [group, source] : response.attribution()) {
    attribution[group] = SourceName(source);
  }
  out["attribution"] = std::move(attribution);
  if (include_timing) {
    nlohmann::ordered_json sources = nlohmann::ordered_json::object();
    for (const auto& [source, timing] : response.timing) {
      sources[std::string(SourceName(source))] = {{"elapsed_ms", timing.elapsed_ms},
                                                  {"from_cache", timing.from_cache},
                                                  {"requests", timing.requests}};
    }
    out["timing"] = {{"total_ms", response.total_ms}, {"sources", std::move(sources)}};
  }
  return out;
}

GatewayOptions GatewayOptionsFrom(const Config& config) {
  GatewayOptions options;
  options.request_deadline = config.request_deadline;
  options.concurrency_cap = config.concurrency_cap;
  options.cache_enabled = config.cache_enabled;
  for (const auto& [source, source_config] : config.sources) {
    options.ttls[source] = source_config.ttl;
  }
  return options;
}

Gateway::Gateway(std::shared_ptr<const Connectors> connectors, GatewayOptions options)
    : connectors_(std::move(connectors)),
      options_(std::move(options)),
      cache_(std::make_shared<ResponseCache>(options_.ttls)) {}

FederatedResponse Gateway::Execute(const QueryPlan& plan) const {
  auto start = Clock::now();
  auto requests = std::make_shared<const std::vector<SubRequest>>(plan.sub_requests);
  auto state = std::make_shared<FanOut>();
  state->outcomes.resize(requests->size());
  state->remaining = requests->size();

  // Workers are detached and own everything they touch, so a deadline expiry
  // can return while stragglers finish in the background.
  std::shared_ptr<ResponseCache> cache = options_.cache_enabled ? cache_ : nullptr;
  std::size_t workers =
      std::min(std::max<std::size_t>(options_.concurrency_cap, 1), requests->size());
  for (std::size_t w = 0; w < workers; ++w) {
    std::thread([state, requests, connectors = connectors_, cache] {
      while (true) {
        std::size_t i = state->next.fetch_add(1);
        if (i >= requests->size()) return;
        Outcome outcome;
        RunSubRequest(*connectors, cache.get(), (*requests)[i], outcome);
        outcome.done = true;
        std::lock_guard lock(state->mu);
        state->outcomes[i] = std::move(outcome);
        if (--state->remaining == 0) state->cv.notify_all();
      }
    }).detach();
  }

  std::vector<Outcome> outcomes;
  {
    std::unique_lock lock(state->mu);
    state->cv.wait_until(lock, start + options_.request_deadline,
                         [&] { return state->remaining == 0; });
    outcomes = state->outcomes;
  }
  double deadline_ms =
      std::chrono::duration<double, std::milli>(options_.request_deadline).count();
  for (Outcome& outcome : outcomes) {
    if (outcome.done) continue;
    outcome.error = MakeError(ErrorKind::kUpstreamUnavailable, "request deadline exceeded");
    outcome.elapsed_ms = deadline_ms;
  }

  FederatedResponse response;
  response.root = plan.root;
  std::set<FieldGroup> failed;
  for (std::size_t i = 0; i < plan.sub_requests.size(); ++i) {
    const SubRequest& request = plan.sub_requests[i];
    const Outcome& outcome = outcomes[i];
    SourceTiming& timing = response.timing[request.source];
    timing.elapsed_ms = std::max(timing.elapsed_ms, outcome.elapsed_ms);
    timing.from_cache = timing.from_cache && outcome.from_cache;
    if (!outcome.from_cache) ++timing.requests;
    if (!outcome.error) continue;
    ErrorEntry entry{request.source, request.key, outcome.error->kind,
                     outcome.error->message};
    if (request.root) response.root_error = entry;
    response.errors.push_back(std::move(entry));
    for (FieldGroup group : GroupsServedBy(request.op)) failed.insert(group);
  }

  auto payload_of = [&](Operation op) -> const SourcePayload* {
    for (std::size_t i = 0; i < plan.sub_requests.size(); ++i) {
      if (plan.sub_requests[i].op == op && outcomes[i].payload) return &*outcomes[i].payload;
    }
    return nullptr;
  };

  switch (plan.root) {
    case RootKind::kPaper: {
      const SourcePayload* core = payload_of(Operation::kWorkCore);
      if (core == nullptr) break;
      WorkContext work{std::get<WorkCore>(*core), {}, {}, std::nullopt, std::nullopt,
                       std::nullopt, Attribute(plan, outcomes)};
      if (const SourcePayload* p = payload_of(Operation::kProjects)) {
        work.projects = std::get<std::vector<Project>>(*p);
      }
      if (const SourcePayload* p = payload_of(Operation::kTopics)) {
        work.topics = std::get<std::vector<Topic>>(*p);
      }
      if (const SourcePayload* p = payload_of(Operation::kMetrics)) {
        work.metrics = std::get<std::optional<Metrics>>(*p);
      }
      if (const SourcePayload* p = payload_of(Operation::kRelatedArtifacts)) {
        const auto& related = std::get<RelatedArtifacts>(*p);
        work.datasets = related.datasets;
        work.softwares = related.softwares;
      }
      nlohmann::ordered_json data;
      data["paper"] = RenderPaper(plan.selection, work, failed);
      response.data = std::move(data);
      response.work = std::move(work);
      break;
    }
    case RootKind::kPerson: {
      const SourcePayload* record = payload_of(Operation::kPerson);
      if (record == nullptr) break;
      const auto& person_record = std::get<PersonRecord>(*record);
      PersonContext person{person_record.orcid,        person_record.name,
                           person_record.employment,   person_record.publications,
                           person_record.datasets,     person_record.softwares,
                           {},                         Attribute(plan, outcomes)};
      if (const SourcePayload* p = payload_of(Operation::kPersonTopics)) {
        person.topics = std::get<std::vector<Topic>>(*p);
      }
      nlohmann::ordered_json data;
      data["person"] = RenderPerson(plan.selection, person, failed);
      response.data = std::move(data);
      response.person = std::move(person);
      break;
    }
    case RootKind::kComparisonCitations: {
      CitationCounts counts;
      std::vector<Doi> order;
      bool any_ok = false;
      for (std::size_t i = 0; i < plan.sub_requests.size(); ++i) {
        Result<Doi> doi = NormalizeDoi(plan.sub_requests[i].key);
        if (!doi.ok()) continue;
        order.push_back(*doi);
        if (outcomes[i].payload) {
          any_ok = true;
          counts[*doi] = std::get<CitationCount>(*outcomes[i].payload);
        } else {
          counts[*doi] = std::nullopt;
        }
      }
      response.citation_counts = counts;
      if (!any_ok) {
        response.root_error =
            ErrorEntry{Source::kArticles, "", ErrorKind::kRootUnavailable,
                       "every citation count lookup failed"};
        break;
      }
      nlohmann::ordered_json data;
      data["citationCounts"] = RenderCitationCounts(plan.selection, order, counts);
      response.data = std::move(data);
      break;
    }
  }
  response.total_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return response;
}

Result<FederatedResponse> Gateway::Query(std::string_view text,
                                         const nlohmann::json& variables) const {
  Result<QueryPlan> plan = PlanQueryText(text, variables);
  if (!plan.ok()) return plan.error();
  return Execute(*plan);
}

Result<FederatedResponse> Gateway::QueryPaper(const Doi& doi,
                                              const std::vector<std::string>& fields) const {
  Result<std::string> text = PaperQueryText(doi, fields);
  if (!text.ok()) return text.error();
  return Query(*text);
}

Result<FederatedResponse> Gateway::QueryPerson(const OrcidId& orcid,
                                               const std::vector<std::string>& fields) const {
  Result<std::string> text = PersonQueryText(orcid, fields);
  if (!text.ok()) return text.error();
  return Query(*text);
}

FederatedResponse Gateway::QueryCitationCounts(std::span<const Doi> dois) const {
  Result<FederatedResponse> response =
      Query(CitationCountsQueryText(std::vector<Doi>(dois.begin(), dois.end())));
  if (response.ok()) return std::move(*response);
  FederatedResponse failed;
  failed.root = RootKind::kComparisonCitations;
  failed.root_error = ErrorEntry{Source::kArticles, "", response.error().kind,
                                 response.error().message};
  return failed;
}

Result<std::shared_ptr<Transport>> MakeTransport(const Config& config) {
  if (config.mode == Mode::kLive) {
    return std::shared_ptr<Transport>(std::make_shared<HttpTransport>(config.base_urls()));
  }
  Result<Scenario> scenario = Scenario::Load(config.scenario);
  if (!scenario.ok()) return scenario.error();
  auto player = std::make_shared<ScenarioPlayer>(std::move(*scenario));
  return std::shared_ptr<Transport>(std::make_shared<FixtureTransport>(player));
}

Result<std::shared_ptr<Gateway>> MakeGateway(const Config& config) {
  Result<std::shared_ptr<Transport>> transport = MakeTransport(config);
  if (!transport.ok()) return transport.error();
  return MakeGateway(config, std::move(*transport));
}

std::shared_ptr<Gateway> MakeGateway(const Config& config,
                                     std::shared_ptr<Transport> transport) {
  auto connectors =
      std::make_shared<const Connectors>(std::move(transport), config.connector_options());
  return std::make_shared<Gateway>(std::move(connectors), GatewayOptionsFrom(config));
}

}  // namespace scholarfed
