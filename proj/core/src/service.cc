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

#include "scholarfed/service.h"

#include <algorithm>
#include <future>

#include "httplib.h"
#include "listen.h"

#include "scholarfed/facets.h"
#include "scholarfed/transport.h"

namespace scholarfed {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr std::chrono::milliseconds kProbeTimeout{1500};

void Reply(httplib::Response& response, int status, const OrderedJson& body) {
  response.status = status;
  response.set_content(body.dump(), "application/json");
}

OrderedJson ErrorBody(const Error& error) {
  OrderedJson entry;
  entry["source"] = nullptr;
  entry["key"] = "";
  entry["kind"] = ErrorKindName(error.kind);
  entry["message"] = error.message;
  return {{"data", nullptr}, {"errors", OrderedJson::array({entry})}};
}

OrderedJson ErrorJson(const ErrorEntry& error) {
  return {{"source", SourceName(error.source)},
          {"key", error.key},
          {"kind", ErrorKindName(error.kind)},
          {"message", error.message}};
}

// Per-lookup failures are appended to `errors`; the counter only fails when
// no lookup succeeded.
facets::CitationCounter GatewayCounter(std::shared_ptr<Gateway> gateway, OrderedJson* errors) {
  return [gateway, errors](std::span<const Doi> dois) -> Result<CitationCounts> {
    FederatedResponse response = gateway->QueryCitationCounts(dois);
    if (response.root_error || !response.citation_counts) {
      std::string message = response.root_error ? response.root_error->message
                                                : "citation counts unavailable";
      return MakeError(ErrorKind::kUpstreamUnavailable, message);
    }
    for (const ErrorEntry& error : response.errors) errors->push_back(ErrorJson(error));
    return *response.citation_counts;
  };
}

}  // namespace

GatewayService::GatewayService(Config config, std::shared_ptr<Gateway> gateway)
    : config_(std::move(config)), gateway_(std::move(gateway)) {}

GatewayService::~GatewayService() { Stop(); }

void GatewayService::ApplyCors(const httplib::Request& request,
                               httplib::Response& response) const {
  const auto& origins = config_.cors_origins;
  if (std::find(origins.begin(), origins.end(), "*") != origins.end()) {
    response.set_header("Access-Control-Allow-Origin", "*");
  } else {
    std::string origin = request.get_header_value("Origin");
    if (origin.empty() || std::find(origins.begin(), origins.end(), origin) == origins.end()) {
      return;
    }
    response.set_header("Access-Control-Allow-Origin", origin);
    response.set_header("Vary", "Origin");
  }
  response.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
  response.set_header("Access-Control-Allow-Headers", "Content-Type");
}

OrderedJson GatewayService::Health() const {
  OrderedJson out;
  out["status"] = "ok";
  out["mode"] = ModeName(config_.mode);
  if (config_.mode == Mode::kFixtures) out["scenario"] = config_.scenario.string();
  std::map<Source, std::future<bool>> probes;
  if (config_.mode == Mode::kLive) {
    for (const auto& [source, url] : config_.base_urls()) {
      probes.emplace(source, std::async(std::launch::async, [url = url] {
                       return ProbeReachable(url, kProbeTimeout);
                     }));
    }
  }
  OrderedJson upstreams = OrderedJson::object();
  for (const auto& [source, url] : config_.base_urls()) {
    OrderedJson entry;
    if (config_.mode == Mode::kLive) {
      entry["base_url"] = url;
      entry["reachable"] = probes.at(source).get();
    } else {
      entry["base_url"] = nullptr;
      entry["reachable"] = true;
    }
    upstreams[std::string(SourceName(source))] = std::move(entry);
  }
  out["upstreams"] = std::move(upstreams);
  return out;
}

Status GatewayService::Start() {
  if (server_) return MakeError(ErrorKind::kInvalidArgument, "service already started");
  if (Status s = ValidateConfig(config_); !s.ok()) return s;
  server_ = std::make_unique<httplib::Server>();
  httplib::Server& server = *server_;
  internal::UseExclusivePorts(server);

  server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    ApplyCors(req, res);
    return httplib::Server::HandlerResponse::Unhandled;
  });
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, Health());
  });

  server.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
    Json body = Json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("query") ||
        !body["query"].is_string()) {
      Reply(res, 400,
            ErrorBody(MakeError(ErrorKind::kSchemaError,
                                "request body must be a JSON object with a 'query' string")));
      return;
    }
    Json variables = body.value("variables", Json(nullptr));
    if (!variables.is_null() && !variables.is_object()) {
      Reply(res, 400,
            ErrorBody(MakeError(ErrorKind::kSchemaError, "'variables' must be an object")));
      return;
    }
    Result<FederatedResponse> response =
        gateway_->Query(body["query"].get<std::string>(), variables);
    if (!response.ok()) {
      Reply(res, 400, ErrorBody(response.error()));
      return;
    }
    Reply(res, 200, ToJson(*response));
  });

  server.Post("/comparison/filter", [this](const httplib::Request& req,
                                           httplib::Response& res) {
    Json body = Json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("table")) {
      Reply(res, 400, ErrorBody(MakeError(ErrorKind::kInvalidArgument,
                                          "request body must be a JSON object with a 'table'")));
      return;
    }
    Result<facets::ComparisonTable> table = facets::ParseTable(body["table"]);
    if (!table.ok()) {
      Reply(res, 400, ErrorBody(table.error()));
      return;
    }
    std::vector<facets::FacetFilter> filters;
    Json raw_filters = body.value("filters", Json::array());
    if (!raw_filters.is_array()) {
      Reply(res, 400,
            ErrorBody(MakeError(ErrorKind::kInvalidArgument, "'filters' must be an array")));
      return;
    }
    for (const Json& item : raw_filters) {
      Result<facets::FacetFilter> filter = facets::ParseFilter(item);
      if (!filter.ok()) {
        Reply(res, 400, ErrorBody(filter.error()));
        return;
      }
      filters.push_back(std::move(*filter));
    }
    if (Status s = facets::ValidateFilters(*table, filters); !s.ok()) {
      Reply(res, 400, ErrorBody(s.error()));
      return;
    }
    OrderedJson errors = OrderedJson::array();
    facets::ComparisonTable enriched = *table;
    if (body.value("enrich", true)) {
      Result<facets::ComparisonTable> result =
          facets::EnrichWithCitations(*table, GatewayCounter(gateway_, &errors));
      if (result.ok()) {
        enriched = std::move(*result);
      } else {
        for (auto& row : enriched.rows) row.citation_count = std::nullopt;
        errors.push_back({{"source", SourceName(Source::kArticles)},
                          {"key", ""},
                          {"kind", ErrorKindName(result.error().kind)},
                          {"message", result.error().message}});
      }
    }
    Result<facets::FilterOutcome> outcome = facets::FilterComparison(enriched, filters);
    if (!outcome.ok()) {
      Reply(res, 400, ErrorBody(outcome.error()));
      return;
    }
    OrderedJson out;
    out["table"] = facets::ToJson(outcome->table);
    out["summary"] = facets::ToJson(facets::FacetSummary(enriched));
    out["counts"] = facets::SummaryJson(*outcome);
    out["errors"] = std::move(errors);
    Reply(res, 200, out);
  });

  if (config_.port == 0) {
    port_ = server.bind_to_any_port(config_.host);
  } else {
    port_ = server.bind_to_port(config_.host, config_.port) ? config_.port : -1;
  }
  if (port_ <= 0) {
    server_.reset();
    port_ = 0;
    return MakeError(ErrorKind::kPortInUse,
                     "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  thread_ = std::thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  return {};
}

void GatewayService::Stop() {
  if (!server_) return;
  server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

}  // namespace scholarfed
