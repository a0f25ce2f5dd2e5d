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

#include "scholarfed_cli/cli.h"

#include <pthread.h>
#include <signal.h>

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scholarfed/config.h"
#include "scholarfed/facets.h"
#include "scholarfed/gateway.h"
#include "scholarfed/pid.h"
#include "scholarfed/recorder.h"
#include "scholarfed/scenario.h"
#include "scholarfed/service.h"
#include "scholarfed/stub_server.h"

namespace scholarfed::cli {
namespace {

struct CommonFlags {
  std::string mode;
  std::string scenario;
  std::string config;
  std::string output = "pretty";
  bool timing = false;
};

std::string Dump(const nlohmann::ordered_json& value, const CommonFlags& flags) {
  return flags.output == "compact" ? value.dump() : value.dump(2);
}

// A bare name that is not an existing directory refers to a bundled scenario.
std::filesystem::path ResolveScenario(const std::string& value) {
  std::filesystem::path path = value;
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec) || path.has_parent_path()) return path;
  std::filesystem::path bundled = DefaultDataDir() / "scenarios" / path;
  return std::filesystem::is_directory(bundled, ec) ? bundled : path;
}

Result<Config> BuildConfig(const CommonFlags& flags) {
  std::optional<std::filesystem::path> file;
  if (!flags.config.empty()) file = flags.config;
  Result<Config> config = LoadConfig(file, ProcessEnv());
  if (!config.ok()) return config;
  if (flags.mode == "live") {
    config->mode = Mode::kLive;
  } else if (flags.mode == "fixtures") {
    config->mode = Mode::kFixtures;
  } else if (!flags.mode.empty()) {
    return MakeError(ErrorKind::kConfigError,
                     "--mode must be live or fixtures, got '" + flags.mode + "'");
  }
  if (!flags.scenario.empty()) config->scenario = ResolveScenario(flags.scenario);
  if (Status s = ValidateConfig(*config); !s.ok()) return s.error();
  return config;
}

int Fail(std::ostream& err, const Error& error) {
  err << "error: " << ToString(error) << "\n";
  return kExitUsage;
}

void AddCommon(CLI::App& command, CommonFlags& flags) {
  command.add_option("--mode", flags.mode, "live or fixtures")
      ->check(CLI::IsMember({"live", "fixtures"}));
  command.add_option("--scenario", flags.scenario,
                     "Scenario directory, or the name of a bundled scenario");
  command.add_option("--config", flags.config, "JSON config file");
  command.add_option("--output", flags.output, "pretty or compact")
      ->check(CLI::IsMember({"pretty", "compact"}));
  command.add_flag("--timing", flags.timing, "Include the timing block");
}

// Blocks until the hooks' stop token fires or, without one, until SIGINT or
// SIGTERM arrives.
void WaitForShutdown(const Hooks& hooks) {
  if (hooks.stop.stop_possible()) {
    std::mutex mu;
    std::condition_variable_any cv;
    std::unique_lock lock(mu);
    cv.wait(lock, hooks.stop, [] { return false; });
    return;
  }
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  int signal = 0;
  sigwait(&set, &signal);
}

// Server threads inherit the mask, so the signals reach sigwait only.
void BlockShutdownSignals(const Hooks& hooks) {
  if (hooks.stop.stop_possible()) return;
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

int EmitResponse(const FederatedResponse& response, const CommonFlags& flags,
                 std::ostream& out) {
  out << Dump(ToJson(response, flags.timing), flags) << "\n";
  return response.root_error ? kExitNotFound : kExitOk;
}

int RunPaper(const CommonFlags& flags, const std::string& raw_doi,
             const std::vector<std::string>& fields, std::ostream& out, std::ostream& err) {
  Result<Doi> doi = NormalizeDoi(raw_doi);
  if (!doi.ok()) return Fail(err, doi.error());
  Result<Config> config = BuildConfig(flags);
  if (!config.ok()) return Fail(err, config.error());
  Result<std::shared_ptr<Gateway>> gateway = MakeGateway(*config);
  if (!gateway.ok()) return Fail(err, gateway.error());
  Result<FederatedResponse> response = (*gateway)->QueryPaper(*doi, fields);
  if (!response.ok()) return Fail(err, response.error());
  return EmitResponse(*response, flags, out);
}

int RunPerson(const CommonFlags& flags, const std::string& raw_orcid,
              const std::vector<std::string>& fields, std::ostream& out, std::ostream& err) {
  Result<OrcidId> orcid = NormalizeOrcid(raw_orcid);
  if (!orcid.ok()) return Fail(err, orcid.error());
  Result<Config> config = BuildConfig(flags);
  if (!config.ok()) return Fail(err, config.error());
  Result<std::shared_ptr<Gateway>> gateway = MakeGateway(*config);
  if (!gateway.ok()) return Fail(err, gateway.error());
  Result<FederatedResponse> response = (*gateway)->QueryPerson(*orcid, fields);
  if (!response.ok()) return Fail(err, response.error());
  return EmitResponse(*response, flags, out);
}

struct CompareFlags {
  std::string input;
  std::optional<std::int64_t> min_citations;
  std::optional<std::int64_t> max_citations;
  std::vector<std::string> where;
  bool no_enrich = false;
};

int RunCompare(const CommonFlags& flags, const CompareFlags& compare, std::ostream& out,
               std::ostream& err) {
  std::ifstream in(compare.input);
  if (!in) {
    return Fail(err, MakeError(ErrorKind::kIoError, "cannot read " + compare.input));
  }
  std::stringstream text;
  text << in.rdbuf();
  Result<facets::ComparisonTable> table = facets::ParseTableText(text.str());
  if (!table.ok()) return Fail(err, table.error());

  std::vector<facets::FacetFilter> filters;
  if (compare.min_citations) filters.push_back(facets::CitationsAtLeast(*compare.min_citations));
  if (compare.max_citations) {
    filters.push_back({facets::CitationCountTarget{}, facets::FacetOp::kLe,
                       static_cast<double>(*compare.max_citations)});
  }
  for (const std::string& expression : compare.where) {
    Result<facets::FacetFilter> filter = facets::ParseWhere(expression);
    if (!filter.ok()) return Fail(err, filter.error());
    filters.push_back(std::move(*filter));
  }
  if (Status s = facets::ValidateFilters(*table, filters); !s.ok()) return Fail(err, s.error());

  facets::ComparisonTable enriched = *table;
  if (!compare.no_enrich) {
    Result<Config> config = BuildConfig(flags);
    if (!config.ok()) return Fail(err, config.error());
    Result<std::shared_ptr<Gateway>> gateway = MakeGateway(*config);
    if (!gateway.ok()) return Fail(err, gateway.error());
    std::shared_ptr<Gateway> shared = *gateway;
    Result<facets::ComparisonTable> result = facets::EnrichWithCitations(
        *table, [shared](std::span<const Doi> dois) -> Result<CitationCounts> {
          FederatedResponse response = shared->QueryCitationCounts(dois);
          if (response.root_error || !response.citation_counts) {
            return MakeError(ErrorKind::kUpstreamUnavailable,
                             response.root_error ? response.root_error->message
                                                 : "citation counts unavailable");
          }
          return *response.citation_counts;
        });
    if (result.ok()) {
      enriched = std::move(*result);
    } else {
      err << "warning: citation enrichment failed: " << ToString(result.error()) << "\n";
      for (auto& row : enriched.rows) row.citation_count = std::nullopt;
    }
  }
  Result<facets::FilterOutcome> outcome = facets::FilterComparison(enriched, filters);
  if (!outcome.ok()) return Fail(err, outcome.error());
  out << Dump(facets::ToJson(outcome->table), flags) << "\n";
  err << outcome->kept << " kept, " << outcome->filtered << " filtered, " << outcome->unknown
      << " unknown\n";
  return kExitOk;
}

int RunServe(const CommonFlags& flags, std::optional<int> port, const std::string& host,
             std::ostream& out, std::ostream& err, const Hooks& hooks) {
  Result<Config> config = BuildConfig(flags);
  if (!config.ok()) return Fail(err, config.error());
  if (port) config->port = *port;
  if (!host.empty()) config->host = host;
  if (Status s = ValidateConfig(*config); !s.ok()) return Fail(err, s.error());
  Result<std::shared_ptr<Gateway>> gateway = MakeGateway(*config);
  if (!gateway.ok()) return Fail(err, gateway.error());
  BlockShutdownSignals(hooks);
  GatewayService service(*config, *gateway);
  if (Status s = service.Start(); !s.ok()) return Fail(err, s.error());
  out << "gateway listening on http://" << config->host << ":" << service.port() << " ("
      << ModeName(config->mode) << ")\n"
      << std::flush;
  if (hooks.on_ready) hooks.on_ready({{"gateway", service.port()}});
  WaitForShutdown(hooks);
  service.Stop();
  out << "gateway stopped\n";
  return kExitOk;
}

int RunStub(const CommonFlags& flags, int base_port, const std::string& host,
            std::ostream& out, std::ostream& err, const Hooks& hooks) {
  if (base_port < 0 || base_port > 65535 - 5) {
    return Fail(err, MakeError(ErrorKind::kConfigError,
                               "--port must be 0 or a port leaving room for 5 stubs"));
  }
  std::filesystem::path directory =
      flags.scenario.empty() ? DefaultConfig().scenario : ResolveScenario(flags.scenario);
  Result<Scenario> scenario = Scenario::Load(directory);
  if (!scenario.ok()) return Fail(err, scenario.error());
  BlockShutdownSignals(hooks);
  StubServer stub(std::make_shared<ScenarioPlayer>(std::move(*scenario)));
  if (Status s = stub.Start(ConsecutivePorts(base_port), host); !s.ok()) {
    return Fail(err, s.error());
  }
  std::map<std::string, int> ports;
  for (Source source : kAllSources) {
    ports[std::string(SourceName(source))] = stub.port(source);
    out << SourceName(source) << " " << stub.base_url(source) << "\n";
  }
  out << std::flush;
  if (hooks.on_ready) hooks.on_ready(ports);
  WaitForShutdown(hooks);
  stub.Stop();
  out << "stubs stopped\n";
  return kExitOk;
}

int RunRecord(const CommonFlags& flags, const std::string& source_name, const std::string& key,
              std::ostream& out, std::ostream& err) {
  Result<Source> source = SourceFromName(source_name);
  if (!source.ok()) return Fail(err, source.error());
  if (flags.scenario.empty()) {
    return Fail(err, MakeError(ErrorKind::kConfigError, "record needs --scenario"));
  }
  CommonFlags live = flags;
  live.scenario.clear();
  if (live.mode.empty()) live.mode = "live";
  Result<Config> config = BuildConfig(live);
  if (!config.ok()) return Fail(err, config.error());
  Result<FixtureEntry> entry = RecordFixture(*source, key, *config, flags.scenario);
  if (!entry.ok()) return Fail(err, entry.error());
  out << "recorded " << SourceName(entry->source) << " " << entry->key << " (HTTP "
      << entry->status << ")\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
           const Hooks& hooks) {
  CLI::App app{"Federated scholarly context queries over articles, projects, topics, "
               "metrics and the PID graph.",
               "scholarfed"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string doi;
  std::string orcid;
  std::vector<std::string> fields;
  CLI::App* paper = app.add_subcommand("paper", "Query the context of one paper by DOI");
  paper->add_option("--doi", doi, "DOI of the paper")->required();
  paper->add_option("--fields", fields, "Top-level fields to select (comma separated)")
      ->delimiter(',');
  AddCommon(*paper, flags);

  CLI::App* person = app.add_subcommand("person", "Query the context of a person by ORCID");
  person->add_option("--orcid", orcid, "ORCID iD of the person")->required();
  person->add_option("--fields", fields, "Top-level fields to select (comma separated)")
      ->delimiter(',');
  AddCommon(*person, flags);

  CompareFlags compare;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Enrich and filter a comparison file");
  compare_cmd->add_option("input", compare.input, "Comparison JSON file")->required();
  compare_cmd->add_option("--min-citations", compare.min_citations, "Keep rows with >= N");
  compare_cmd->add_option("--max-citations", compare.max_citations, "Keep rows with <= N");
  compare_cmd->add_option("--where", compare.where, "'<column> <op> <number>' (repeatable)");
  compare_cmd->add_flag("--no-enrich", compare.no_enrich, "Skip citation lookups");
  AddCommon(*compare_cmd, flags);

  std::optional<int> serve_port;
  std::string host;
  CLI::App* serve = app.add_subcommand("serve", "Run the gateway HTTP service");
  serve->add_option("--port", serve_port, "Listening port (0 picks one)");
  serve->add_option("--host", host, "Listening address");
  AddCommon(*serve, flags);

  int stub_port = 9100;
  std::string stub_host = "127.0.0.1";
  CLI::App* stub = app.add_subcommand("stub", "Serve a scenario as stub upstreams");
  stub->add_option("--port", stub_port, "First of five consecutive ports (0 picks them)");
  stub->add_option("--host", stub_host, "Listening address");
  AddCommon(*stub, flags);

  std::string source;
  std::string key;
  CLI::App* record = app.add_subcommand("record", "Capture one live upstream answer");
  record->add_option("--source", source, "Source role, e.g. articles_api")->required();
  record->add_option("--key", key, "DOI or ORCID iD")->required();
  AddCommon(*record, flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (CLI::App* sub : app.get_subcommands()) {
      err << sub->help();
      return kExitUsage;
    }
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  if (paper->parsed()) return RunPaper(flags, doi, fields, out, err);
  if (person->parsed()) return RunPerson(flags, orcid, fields, out, err);
  if (compare_cmd->parsed()) return RunCompare(flags, compare, out, err);
  if (serve->parsed()) return RunServe(flags, serve_port, host, out, err, hooks);
  if (stub->parsed()) return RunStub(flags, stub_port, stub_host, out, err, hooks);
  if (record->parsed()) return RunRecord(flags, source, key, out, err);
  return kExitUsage;
}

}  // namespace scholarfed::cli
