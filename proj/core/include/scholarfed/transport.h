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

#ifndef SCHOLARFED_TRANSPORT_H_
#define SCHOLARFED_TRANSPORT_H_

#include <chrono>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scholarfed/domain.h"
#include "scholarfed/result.h"

namespace scholarfed {

using Params = std::vector<std::pair<std::string, std::string>>;

// One native request against an upstream, plus the PID it is keyed by.
struct UpstreamRequest {
  Source source;
  std::string key;
  std::string method = "GET";
  std::string path;
  Params params;
  Params headers;
  std::string body;
  std::string content_type;
};

struct UpstreamResponse {
  int status = 0;
  std::string body;
};

// Sends one request. Network failures and timeouts come back as
// kUpstreamUnavailable; any HTTP status is a successful send.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual Result<UpstreamResponse> Send(const UpstreamRequest& request,
                                        std::chrono::milliseconds timeout) = 0;
};

// Live HTTP(S) transport. Base URLs may carry a path prefix.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::map<Source, std::string> base_urls);

  Result<UpstreamResponse> Send(const UpstreamRequest& request,
                                std::chrono::milliseconds timeout) override;

 private:
  std::map<Source, std::string> base_urls_;
};

// Splits `scheme://host[:port][/prefix]` into origin and path prefix.
struct BaseUrl {
  std::string origin;
  std::string prefix;
};
Result<BaseUrl> SplitBaseUrl(std::string_view url);

// Probes `base_url` with a short GET; any HTTP answer counts as reachable.
bool ProbeReachable(const std::string& base_url,
                    std::chrono::milliseconds timeout);

}  // namespace scholarfed

#endif  // SCHOLARFED_TRANSPORT_H_
