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

#ifndef SCHOLARFED_DOMAIN_H_
#define SCHOLARFED_DOMAIN_H_

#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scholarfed/pid.h"
#include "scholarfed/result.h"

namespace scholarfed {

// Upstream roles. Vendors are configuration, not code.
enum class Source {
  kArticles,
  kProjects,
  kTopics,
  kMetrics,
  kPidGraph,
};

inline constexpr Source kAllSources[] = {Source::kArticles, Source::kProjects,
                                         Source::kTopics, Source::kMetrics,
                                         Source::kPidGraph};

std::string_view SourceName(Source source);
Result<Source> SourceFromName(std::string_view name);

struct WorkRef {
  std::string title;
  std::optional<Doi> doi;

  bool operator==(const WorkRef&) const = default;
};

struct WorkCore {
  Doi doi;
  std::string title;
  std::optional<std::string> abstract;
  std::vector<WorkRef> citations;
  std::vector<WorkRef> references;
  // Authoritative count; the citation list may be truncated by the source.
  std::optional<std::int64_t> citation_count;

  bool operator==(const WorkCore&) const = default;
};

struct Project {
  std::string funder;
  std::string project_name;
  std::optional<std::string> award_number;

  bool operator==(const Project&) const = default;
};

struct Topic {
  std::string label;
  std::optional<std::string> topic_id;

  bool operator==(const Topic&) const = default;
};

struct Metrics {
  std::string details_url;
  std::string badge_image_url;
  std::optional<double> score;

  bool operator==(const Metrics&) const = default;
};

// ISO-8601 calendar date with optional month and day (`2019`, `2019-05`,
// `2019-05-01`).
class PartialDate {
 public:
  static Result<PartialDate> Parse(std::string_view text);

  int year() const { return year_; }
  std::optional<int> month() const { return month_; }
  std::optional<int> day() const { return day_; }
  bool fully_specified() const { return month_ && day_; }
  std::string ToString() const;

  friend bool operator==(const PartialDate&, const PartialDate&) = default;
  // Lexicographic on (year, month, day); an absent component sorts first.
  friend std::strong_ordering operator<=>(const PartialDate& a,
                                          const PartialDate& b);

 private:
  PartialDate(int year, std::optional<int> month, std::optional<int> day)
      : year_(year), month_(month), day_(day) {}

  int year_;
  std::optional<int> month_;
  std::optional<int> day_;
};

struct EmploymentRecord {
  std::string organization_name;
  std::optional<OrgId> organization_id;
  std::optional<PartialDate> start_date;
  // Absent means current position.
  std::optional<PartialDate> end_date;

  bool current() const { return !end_date.has_value(); }
  bool operator==(const EmploymentRecord&) const = default;
};

enum class ArtifactType { kPublication, kDataset, kSoftware, kOther };

std::string_view ArtifactTypeName(ArtifactType type);

struct Creator {
  std::string given_name;
  std::string family_name;
  std::optional<OrcidId> id;

  bool operator==(const Creator&) const = default;
};

struct ArtifactNode {
  std::string id;
  ArtifactType type = ArtifactType::kOther;
  std::vector<std::string> titles;
  std::vector<Creator> creators;
  std::vector<Project> funding;

  bool operator==(const ArtifactNode&) const = default;
};

struct ArtifactConnection {
  std::int64_t total_count = 0;
  std::vector<ArtifactNode> nodes;

  bool operator==(const ArtifactConnection&) const = default;
};

// The person record served by the PID graph.
struct PersonRecord {
  OrcidId orcid;
  std::string name;
  std::vector<EmploymentRecord> employment;
  ArtifactConnection publications;
  ArtifactConnection datasets;
  ArtifactConnection softwares;

  bool operator==(const PersonRecord&) const = default;
};

// Datasets and software linked to a work in the PID graph.
struct RelatedArtifacts {
  ArtifactConnection datasets;
  ArtifactConnection softwares;

  bool operator==(const RelatedArtifacts&) const = default;
};

using CitationCount = std::optional<std::int64_t>;
using CitationCounts = std::map<Doi, CitationCount>;

using SourcePayload =
    std::variant<WorkCore, std::vector<Project>, std::vector<Topic>,
                 std::optional<Metrics>, PersonRecord, RelatedArtifacts,
                 CitationCount>;

struct SourceResult {
  Source source;
  std::string key;
  SourcePayload payload;
  std::chrono::system_clock::time_point fetched_at;
  bool from_cache = false;
};

bool PayloadMatchesSource(Source source, const SourcePayload& payload);

// Invariant checks. Mapping code only hands out values that pass these.
Status Validate(const WorkRef& ref);
Status Validate(const WorkCore& core);
Status Validate(const Project& project);
Status Validate(const Topic& topic);
Status Validate(const Metrics& metrics);
Status Validate(const EmploymentRecord& record);
Status Validate(const Creator& creator);
Status Validate(const ArtifactNode& node);
Status Validate(const ArtifactConnection& connection);
Status Validate(const PersonRecord& person);
Status Validate(const RelatedArtifacts& related);

bool IsAbsoluteUrl(std::string_view text);

// start_date descending, absent start dates last, current positions first on
// ties. Stable.
void SortEmployment(std::vector<EmploymentRecord>& employment);

}  // namespace scholarfed

#endif  // SCHOLARFED_DOMAIN_H_
