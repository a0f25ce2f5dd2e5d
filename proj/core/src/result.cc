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

#include "scholarfed/result.h"

#include <string>

namespace scholarfed {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedPid: return "MalformedPid";
    case ErrorKind::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::kNotFound: return "NotFound";
    case ErrorKind::kUpstreamUnavailable: return "UpstreamUnavailable";
    case ErrorKind::kMalformedUpstream: return "MalformedUpstream";
    case ErrorKind::kRateLimited: return "RateLimited";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kRootUnavailable: return "RootUnavailable";
    case ErrorKind::kScenarioInvalid: return "ScenarioInvalid";
    case ErrorKind::kPortInUse: return "PortInUse";
    case ErrorKind::kUnknownColumn: return "UnknownColumn";
    case ErrorKind::kTypeMismatch: return "TypeMismatch";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string ToString(const Error& error) {
  std::string out(ErrorKindName(error.kind));
  if (!error.message.empty()) {
    out += ": ";
    out += error.message;
  }
  return out;
}

}  // namespace scholarfed
