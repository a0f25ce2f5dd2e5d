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

#include "scholarfed/transport.h"

#include <string>

#include "httplib.h"

namespace scholarfed {
namespace {

std::string ErrorText(httplib::Error error) {
  return httplib::to_string(error);
}

void ApplyTimeout(httplib::Client& client, std::chrono::milliseconds timeout) {
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto micros =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
}

}  // namespace

Result<BaseUrl> SplitBaseUrl(std::string_view url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    return MakeError(ErrorKind::kConfigError,
                     "base URL needs a scheme: '" + std::string(url) + "'");
  }
  std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    return MakeError(ErrorKind::kConfigError,
                     "unsupported scheme in '" + std::string(url) + "'");
  }
  std::size_t path_start = url.find('/', scheme_end + 3);
  BaseUrl out;
  out.origin = std::string(url.substr(0, path_start));
  if (path_start != std::string_view::npos) {
    out.prefix = std::string(url.substr(path_start));
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  if (out.origin.size() <= scheme_end + 3) {
    return MakeError(ErrorKind::kConfigError,
                     "base URL has no host: '" + std::string(url) + "'");
  }
  return out;
}

HttpTransport::HttpTransport(std::map<Source, std::string> base_urls)
    : base_urls_(std::move(base_urls)) {}

Result<UpstreamResponse> HttpTransport::Send(const UpstreamRequest& request,
                                             std::chrono::milliseconds timeout) {
  auto it = base_urls_.find(request.source);
  if (it == base_urls_.end()) {
    return MakeError(ErrorKind::kUpstreamUnavailable,
                     "no base URL configured for " +
                         std::string(SourceName(request.source)));
  }
  Result<BaseUrl> base = SplitBaseUrl(it->second);
  if (!base.ok()) {
    return MakeError(ErrorKind::kUpstreamUnavailable, base.error().message);
  }
  httplib::Client client(base->origin);
  ApplyTimeout(client, timeout);
  client.set_keep_alive(false);

  httplib::Headers headers;
  for (const auto& [name, value] : request.headers) headers.emplace(name, value);
  std::string path = base->prefix + request.path;

  httplib::Result result;
  if (request.method == "POST") {
    if (!request.params.empty()) {
      httplib::Params params(request.params.begin(), request.params.end());
      path = httplib::append_query_params(path, params);
    }
    result = client.Post(path, headers, request.body,
                         request.content_type.empty() ? "application/json"
                                                      : request.content_type);
  } else {
    httplib::Params params(request.params.begin(), request.params.end());
    result = client.Get(path, params, headers);
  }
  if (!result) {
    std::string what = result.error() == httplib::Error::Read ||
                               result.error() == httplib::Error::ConnectionTimeout
                           ? "timeout"
                           : ErrorText(result.error());
    return MakeError(ErrorKind::kUpstreamUnavailable,
                     std::string(SourceName(request.source)) + ": " + what);
  }
  return UpstreamResponse{result->status, result->body};
}

bool ProbeReachable(const std::string& base_url,
                    std::chrono::milliseconds timeout) {
  Result<BaseUrl> base = SplitBaseUrl(base_url);
  if (!base.ok()) return false;
  httplib::Client client(base->origin);
  ApplyTimeout(client, timeout);
  client.set_keep_alive(false);
  auto result = client.Head(base->prefix.empty() ? "/" : base->prefix);
  return static_cast<bool>(result);
}

}  // namespace scholarfed
