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

#ifndef SCHOLARFED_STUB_SERVER_H_
#define SCHOLARFED_STUB_SERVER_H_

#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "scholarfed/domain.h"
#include "scholarfed/result.h"
#include "scholarfed/scenario.h"

namespace httplib {
class Server;
}

namespace scholarfed {

// One HTTP listener per source role, each answering that upstream's native
// request shape from the scenario. Unconfigured keys get 404. `GET /_log`
// returns the listener's request log.
class StubServer {
 public:
  explicit StubServer(std::shared_ptr<ScenarioPlayer> player);
  ~StubServer();

  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  // Port 0 binds an ephemeral port. Fails with kPortInUse when a bind fails.
  Status Start(const std::map<Source, int>& ports,
               const std::string& host = "127.0.0.1");
  // Stops one listener, e.g. to simulate an upstream outage.
  void StopSource(Source source);
  void Stop();

  int port(Source source) const;
  std::string base_url(Source source) const;
  std::map<Source, std::string> base_urls() const;

  const std::shared_ptr<ScenarioPlayer>& player() const { return player_; }

 private:
  struct Listener {
    std::unique_ptr<httplib::Server> server;
    std::thread thread;
    int port = 0;
  };

  void Install(Source source, httplib::Server& server);

  std::shared_ptr<ScenarioPlayer> player_;
  std::string host_;
  std::map<Source, Listener> listeners_;
};

// Consecutive ports starting at `base_port`, in kAllSources order.
std::map<Source, int> ConsecutivePorts(int base_port);

}  // namespace scholarfed

#endif  // SCHOLARFED_STUB_SERVER_H_
