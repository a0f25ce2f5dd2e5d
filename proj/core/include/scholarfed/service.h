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

#ifndef SCHOLARFED_SERVICE_H_
#define SCHOLARFED_SERVICE_H_

#include <memory>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "scholarfed/config.h"
#include "scholarfed/gateway.h"
#include "scholarfed/result.h"

namespace httplib {
class Server;
struct Request;
struct Response;
}  // namespace httplib

namespace scholarfed {

// HTTP front of the gateway:
//   POST /query              {query, variables?} -> {data, errors, attribution, timing}
//   POST /comparison/filter  {table, filters}    -> {table, summary, facets, errors}
//   GET  /health                                 -> service and upstream reachability
// Schema and PID errors in a query answer 400; sub-request failures are 200
// with entries in `errors`.
class GatewayService {
 public:
  GatewayService(Config config, std::shared_ptr<Gateway> gateway);
  ~GatewayService();

  GatewayService(const GatewayService&) = delete;
  GatewayService& operator=(const GatewayService&) = delete;

  // Binds config.port (0 picks an ephemeral port) and serves on a
  // background thread.
  Status Start();
  void Stop();
  int port() const { return port_; }

  nlohmann::ordered_json Health() const;

 private:
  void ApplyCors(const httplib::Request& request,
                 httplib::Response& response) const;

  Config config_;
  std::shared_ptr<Gateway> gateway_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace scholarfed

#endif  // SCHOLARFED_SERVICE_H_
