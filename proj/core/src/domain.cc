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

#include "scholarfed/domain.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>

namespace scholarfed {
namespace {

Error Invalid(std::string message) {
  return MakeError(ErrorKind::kMalformedUpstream, std::move(message));
}

bool Blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
}

std::optional<int> ParseFixed(std::string_view s, std::size_t width) {
  if (s.size() != width) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

int DaysInMonth(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  return month == 2 && leap ? 29 : kDays[month - 1];
}

}  // namespace

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kArticles: return "articles_api";
    case Source::kProjects: return "projects_api";
    case Source::kTopics: return "topics_api";
    case Source::kMetrics: return "metrics_api";
    case Source::kPidGraph: return "pid_graph";
  }
  return "unknown";
}

Result<Source> SourceFromName(std::string_view name) {
  for (Source source : kAllSources) {
    if (SourceName(source) == name) return source;
  }
  return MakeError(ErrorKind::kInvalidArgument,
                   "unknown source '" + std::string(name) + "'");
}

Result<PartialDate> PartialDate::Parse(std::string_view text) {
  // Date-times are truncated to their date part.
  if (auto t = text.find('T'); t != std::string_view::npos) {
    text = text.substr(0, t);
  }
  auto bad = [&] {
    return Invalid("not an ISO-8601 date: '" + std::string(text) + "'");
  };
  std::optional<int> year = ParseFixed(text.substr(0, 4), 4);
  if (!year) return bad();
  if (text.size() == 4) return PartialDate(*year, std::nullopt, std::nullopt);
  if (text.size() < 7 || text[4] != '-') return bad();
  std::optional<int> month = ParseFixed(text.substr(5, 2), 2);
  if (!month || *month < 1 || *month > 12) return bad();
  if (text.size() == 7) return PartialDate(*year, month, std::nullopt);
  if (text.size() != 10 || text[7] != '-') return bad();
  std::optional<int> day = ParseFixed(text.substr(8, 2), 2);
  if (!day || *day < 1 || *day > DaysInMonth(*year, *month)) return bad();
  return PartialDate(*year, month, day);
}

std::string PartialDate::ToString() const {
  char buffer[16];
  if (month_ && day_) {
    std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02d", year_, *month_,
                  *day_);
  } else if (month_) {
    std::snprintf(buffer, sizeof buffer, "%04d-%02d", year_, *month_);
  } else {
    std::snprintf(buffer, sizeof buffer, "%04d", year_);
  }
  return buffer;
}

std::strong_ordering operator<=>(const PartialDate& a, const PartialDate& b) {
  if (auto c = a.year_ <=> b.year_; c != 0) return c;
  if (auto c = a.month_.value_or(0) <=> b.month_.value_or(0); c != 0) return c;
  return a.day_.value_or(0) <=> b.day_.value_or(0);
}

std::string_view ArtifactTypeName(ArtifactType type) {
  switch (type) {
    case ArtifactType::kPublication: return "publication";
    case ArtifactType::kDataset: return "dataset";
    case ArtifactType::kSoftware: return "software";
    case ArtifactType::kOther: return "other";
  }
  return "other";
}

bool PayloadMatchesSource(Source source, const SourcePayload& payload) {
  switch (source) {
    case Source::kArticles:
      return std::holds_alternative<WorkCore>(payload) ||
             std::holds_alternative<CitationCount>(payload);
    case Source::kProjects:
      return std::holds_alternative<std::vector<Project>>(payload);
    case Source::kTopics:
      return std::holds_alternative<std::vector<Topic>>(payload);
    case Source::kMetrics:
      return std::holds_alternative<std::optional<Metrics>>(payload);
    case Source::kPidGraph:
      return std::holds_alternative<PersonRecord>(payload) ||
             std::holds_alternative<RelatedArtifacts>(payload);
  }
  return false;
}

bool IsAbsoluteUrl(std::string_view text) {
  std::size_t scheme_end = text.find("://");
  if (scheme_end == std::string_view::npos || scheme_end == 0) return false;
  for (std::size_t i = 0; i < scheme_end; ++i) {
    char c = text[i];
    bool ok = std::isalpha(static_cast<unsigned char>(c)) ||
              (i > 0 && (std::isdigit(static_cast<unsigned char>(c)) ||
                         c == '+' || c == '-' || c == '.'));
    if (!ok) return false;
  }
  std::string_view rest = text.substr(scheme_end + 3);
  std::string_view host = rest.substr(0, rest.find_first_of("/?#"));
  if (host.empty()) return false;
  return std::none_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  });
}

Status Validate(const WorkRef& ref) {
  if (Blank(ref.title)) return Invalid("work reference without a title");
  return {};
}

Status Validate(const WorkCore& core) {
  if (Blank(core.title)) return Invalid("work " + core.doi.value() + " has no title");
  for (const auto& list : {&core.citations, &core.references}) {
    for (const WorkRef& ref : *list) {
      if (Status s = Validate(ref); !s.ok()) return s;
    }
  }
  if (core.citation_count) {
    if (*core.citation_count < 0) return Invalid("negative citation count");
    if (*core.citation_count < static_cast<std::int64_t>(core.citations.size())) {
      return Invalid("citation count below the number of listed citations");
    }
  }
  return {};
}

Status Validate(const Project& project) {
  if (Blank(project.funder) && Blank(project.project_name)) {
    return Invalid("project without funder or name");
  }
  return {};
}

Status Validate(const Topic& topic) {
  if (Blank(topic.label)) return Invalid("topic without a label");
  return {};
}

Status Validate(const Metrics& metrics) {
  if (!IsAbsoluteUrl(metrics.details_url)) {
    return Invalid("metrics details URL is not absolute: '" +
                   metrics.details_url + "'");
  }
  if (!IsAbsoluteUrl(metrics.badge_image_url)) {
    return Invalid("metrics badge URL is not absolute: '" +
                   metrics.badge_image_url + "'");
  }
  if (metrics.score && *metrics.score < 0) return Invalid("negative score");
  return {};
}

Status Validate(const EmploymentRecord& record) {
  if (Blank(record.organization_name)) {
    return Invalid("employment without organization name");
  }
  if (record.start_date && record.end_date &&
      record.start_date->fully_specified() &&
      record.end_date->fully_specified() &&
      *record.end_date < *record.start_date) {
    return Invalid("employment at " + record.organization_name +
                   " ends before it starts");
  }
  return {};
}

Status Validate(const Creator& creator) {
  if (Blank(creator.given_name) && Blank(creator.family_name)) {
    return Invalid("creator without a name");
  }
  return {};
}

Status Validate(const ArtifactNode& node) {
  if (Blank(node.id)) return Invalid("artifact without id");
  if (node.type != ArtifactType::kOther && node.titles.empty()) {
    return Invalid("artifact " + node.id + " has no title");
  }
  for (const Creator& creator : node.creators) {
    if (Status s = Validate(creator); !s.ok()) return s;
  }
  for (const Project& project : node.funding) {
    if (Status s = Validate(project); !s.ok()) return s;
  }
  return {};
}

Status Validate(const ArtifactConnection& connection) {
  if (connection.total_count < 0) return Invalid("negative totalCount");
  if (connection.total_count <
      static_cast<std::int64_t>(connection.nodes.size())) {
    return Invalid("totalCount below the number of nodes");
  }
  for (const ArtifactNode& node : connection.nodes) {
    if (Status s = Validate(node); !s.ok()) return s;
  }
  return {};
}

Status Validate(const PersonRecord& person) {
  for (const EmploymentRecord& record : person.employment) {
    if (Status s = Validate(record); !s.ok()) return s;
  }
  for (const auto* c : {&person.publications, &person.datasets, &person.softwares}) {
    if (Status s = Validate(*c); !s.ok()) return s;
  }
  return {};
}

Status Validate(const RelatedArtifacts& related) {
  if (Status s = Validate(related.datasets); !s.ok()) return s;
  return Validate(related.softwares);
}

void SortEmployment(std::vector<EmploymentRecord>& employment) {
  std::stable_sort(employment.begin(), employment.end(),
                   [](const EmploymentRecord& a, const EmploymentRecord& b) {
                     if (a.start_date.has_value() != b.start_date.has_value()) {
                       return a.start_date.has_value();
                     }
                     if (a.start_date && *a.start_date != *b.start_date) {
                       return *b.start_date < *a.start_date;
                     }
                     return a.current() && !b.current();
                   });
}

}  // namespace scholarfed
