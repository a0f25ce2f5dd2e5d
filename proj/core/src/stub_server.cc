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

#include "scholarfed/stub_server.h"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "listen.h"
#include "scholarfed/wire.h"

namespace scholarfed {

StubServer::StubServer(std::shared_ptr<ScenarioPlayer> player)
    : player_(std::move(player)) {}

StubServer::~StubServer() { Stop(); }

std::map<Source, int> ConsecutivePorts(int base_port) {
  std::map<Source, int> ports;
  int port = base_port;
  for (Source source : kAllSources) ports[source] = base_port == 0 ? 0 : port++;
  return ports;
}

void StubServer::Install(Source source, httplib::Server& server) {
  server.Get("/_log", [this, source](const httplib::Request&, httplib::Response& res) {
    res.set_content(ToJson(player_->log().EntriesFor(source)), "application/json");
  });
  auto playback = [this, source](const httplib::Request& req,
                                 httplib::Response& res) {
    Params params(req.params.begin(), req.params.end());
    std::optional<std::string> key =
        wire::ExtractKey(source, req.method, req.path, params, req.body);
    if (!key) {
      res.status = 404;
      res.set_content(R"({"error":"unrecognised request"})", "application/json");
      return;
    }
    std::optional<FixtureEntry> entry = player_->Next(source, *key);
    if (!entry) {
      res.status = 404;
      res.set_content(R"({"error":"Not Found"})", "application/json");
      return;
    }
    if (entry->latency_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(entry->latency_ms));
    }
    res.status = entry->status;
    res.set_content(entry->body, "application/json");
  };
  server.Get(R"(/.*)", playback);
  server.Post(R"(/.*)", playback);
}

Status StubServer::Start(const std::map<Source, int>& ports, const std::string& host) {
  host_ = host;
  for (const auto& [source, requested] : ports) {
    Listener listener;
    listener.server = std::make_unique<httplib::Server>();
    internal::UseExclusivePorts(*listener.server);
    Install(source, *listener.server);
    if (requested == 0) {
      listener.port = listener.server->bind_to_any_port(host);
    } else {
      listener.port = listener.server->bind_to_port(host, requested) ? requested : -1;
    }
    if (listener.port <= 0) {
      Stop();
      return MakeError(ErrorKind::kPortInUse,
                       std::string(SourceName(source)) + ": cannot bind " + host +
                           ":" + std::to_string(requested));
    }
    httplib::Server* raw = listener.server.get();
    listener.thread = std::thread([raw] { raw->listen_after_bind(); });
    listeners_.emplace(source, std::move(listener));
  }
  for (auto& [source, listener] : listeners_) listener.server->wait_until_ready();
  return {};
}

void StubServer::StopSource(Source source) {
  auto it = listeners_.find(source);
  if (it == listeners_.end()) return;
  it->second.server->stop();
  if (it->second.thread.joinable()) it->second.thread.join();
  listeners_.erase(it);
}

void StubServer::Stop() {
  while (!listeners_.empty()) StopSource(listeners_.begin()->first);
}

int StubServer::port(Source source) const {
  auto it = listeners_.find(source);
  return it == listeners_.end() ? -1 : it->second.port;
}

std::string StubServer::base_url(Source source) const {
  return "http://" + host_ + ":" + std::to_string(port(source));
}

std::map<Source, std::string> StubServer::base_urls() const {
  std::map<Source, std::string> urls;
  for (const auto& [source, listener] : listeners_) urls[source] = base_url(source);
  return urls;
}

}  // namespace scholarfed
