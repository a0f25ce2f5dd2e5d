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

#include "scholarfed/recorder.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scholarfed/wire.h"

namespace scholarfed {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

Result<UpstreamRequest> RequestFor(Source source, const std::string& key,
                                   const Config& live) {
  bool orcid_key = LooksLikeOrcid(key);
  if (orcid_key && (source == Source::kTopics || source == Source::kPidGraph)) {
    Result<OrcidId> orcid = NormalizeOrcid(key);
    if (!orcid.ok()) return orcid.error();
    return source == Source::kTopics ? wire::PersonTopicsRequest(*orcid)
                                     : wire::PersonRequest(*orcid);
  }
  Result<Doi> doi = NormalizeDoi(key);
  if (!doi.ok()) return doi.error();
  switch (source) {
    case Source::kArticles: return wire::WorkCoreRequest(*doi);
    case Source::kProjects: return wire::ProjectsRequest(*doi);
    case Source::kTopics: return wire::TopicsRequest(*doi);
    case Source::kMetrics: return wire::MetricsRequest(*doi, live.metrics_api_key);
    case Source::kPidGraph: return wire::RelatedArtifactsRequest(*doi);
  }
  return MakeError(ErrorKind::kInvalidArgument, "unknown source");
}

bool Sensitive(std::string_view name) {
  std::string folded = wire::FoldCase(name);
  return folded == "key" || folded == "api_key" || folded == "apikey" ||
         folded == "x-api-key" || folded == "authorization";
}

ordered_json RedactedPairs(const Params& pairs) {
  ordered_json out = ordered_json::array();
  for (const auto& [name, value] : pairs) {
    out.push_back({name, Sensitive(name) ? "REDACTED" : value});
  }
  return out;
}

std::string FileStem(const std::string& key) {
  std::string out;
  for (char c : key) {
    bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-';
    out.push_back(safe ? c : '_');
  }
  return out;
}

Status WriteFile(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return MakeError(ErrorKind::kIoError, "cannot write " + path.string());
  out << content;
  return out ? Status{} : MakeError(ErrorKind::kIoError, "short write to " + path.string());
}

}  // namespace

Result<FixtureEntry> RecordFixture(Source source, const std::string& key,
                                   const Config& live, const fs::path& scenario_dir) {
  if (live.mode != Mode::kLive) {
    return MakeError(ErrorKind::kUpstreamUnavailable,
                     "recording needs live mode; configured mode is " +
                         std::string(ModeName(live.mode)));
  }
  Result<UpstreamRequest> request = RequestFor(source, key, live);
  if (!request.ok()) return request.error();

  HttpTransport transport(live.base_urls());
  auto timeout = live.connector_options().TimeoutFor(source);
  Result<UpstreamResponse> response = transport.Send(*request, timeout);
  if (!response.ok()) return response.error();

  FixtureEntry entry{source, request->key, response->status, response->body, 0,
                     std::nullopt};
  std::string stem = FileStem(entry.key);
  fs::path body_rel = fs::path(std::string(SourceName(source))) / (stem + ".json");
  fs::path meta_rel =
      fs::path(std::string(SourceName(source))) / (stem + ".request.json");

  if (Status s = WriteFile(scenario_dir / body_rel, entry.body); !s.ok()) return s.error();
  ordered_json meta = {{"method", request->method},
                       {"path", request->path},
                       {"params", RedactedPairs(request->params)},
                       {"headers", RedactedPairs(request->headers)},
                       {"status", entry.status}};
  if (!request->body.empty()) meta["body"] = request->body;
  if (Status s = WriteFile(scenario_dir / meta_rel, meta.dump(2) + "\n"); !s.ok()) {
    return s.error();
  }

  fs::path manifest_path = scenario_dir / "manifest.json";
  ordered_json manifest = {{"name", scenario_dir.filename().string()},
                           {"entries", ordered_json::array()}};
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    std::stringstream text;
    text << in.rdbuf();
    manifest = ordered_json::parse(text.str(), nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) {
      return MakeError(ErrorKind::kScenarioInvalid,
                       manifest_path.string() + " is not a JSON object");
    }
    if (!manifest.contains("entries")) manifest["entries"] = ordered_json::array();
  }
  ordered_json kept = ordered_json::array();
  for (const auto& item : manifest["entries"]) {
    bool same = item.value("source", "") == SourceName(source) &&
                item.value("key", "") == entry.key;
    if (!same) kept.push_back(item);
  }
  kept.push_back({{"source", SourceName(source)},
                  {"key", entry.key},
                  {"status", entry.status},
                  {"body_file", body_rel.generic_string()}});
  manifest["entries"] = std::move(kept);
  if (Status s = WriteFile(manifest_path, manifest.dump(2) + "\n"); !s.ok()) {
    return s.error();
  }
  return entry;
}

}  // namespace scholarfed
