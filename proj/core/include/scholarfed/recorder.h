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

#ifndef SCHOLARFED_RECORDER_H_
#define SCHOLARFED_RECORDER_H_

#include <filesystem>
#include <string>

#include "scholarfed/config.h"
#include "scholarfed/domain.h"
#include "scholarfed/result.h"
#include "scholarfed/scenario.h"

namespace scholarfed {

// Captures one live upstream answer into a scenario directory: writes the
// raw body under `<source>/<key>.json`, a `.request.json` sidecar with the
// request metadata (API keys redacted) and upserts the manifest entry. The
// request shape is the one the connectors use for that source and key; for
// the topics and pid_graph roles an ORCID key selects the person query.
//
// Fails with kUpstreamUnavailable unless `live` is in live mode and the
// upstream answered.
Result<FixtureEntry> RecordFixture(Source source, const std::string& key,
                                   const Config& live,
                                   const std::filesystem::path& scenario_dir);

}  // namespace scholarfed

#endif  // SCHOLARFED_RECORDER_H_
