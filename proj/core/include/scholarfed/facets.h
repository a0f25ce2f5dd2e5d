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

#ifndef SCHOLARFED_FACETS_H_
#define SCHOLARFED_FACETS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "scholarfed/domain.h"
#include "scholarfed/pid.h"
#include "scholarfed/result.h"

namespace scholarfed::facets {

enum class ColumnKind { kText, kNumeric };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kText;

  bool operator==(const Column&) const = default;
};

// Absent, number or text.
using CellValue = std::variant<std::monostate, double, std::string>;

struct Row {
  std::optional<Doi> doi;
  std::string label;
  std::map<std::string, CellValue> cells;
  std::optional<std::int64_t> citation_count;

  bool operator==(const Row&) const = default;
};

struct ComparisonTable {
  std::string title;
  std::vector<Column> columns;
  std::vector<Row> rows;

  const Column* FindColumn(std::string_view name) const;
  bool operator==(const ComparisonTable&) const = default;
};

Status Validate(const ComparisonTable& table);

struct CitationCountTarget {
  bool operator==(const CitationCountTarget&) const = default;
};
struct ContentColumn {
  std::string name;
  bool operator==(const ContentColumn&) const = default;
};
using FacetTarget = std::variant<CitationCountTarget, ContentColumn>;

enum class FacetOp { kLt, kLe, kGt, kGe, kEq };

std::string_view FacetOpName(FacetOp op);
Result<FacetOp> FacetOpFromName(std::string_view name);

struct FacetFilter {
  FacetTarget target;
  FacetOp op = FacetOp::kGe;
  double threshold = 0;

  bool operator==(const FacetFilter&) const = default;
};

inline FacetFilter CitationsAtLeast(std::int64_t n) {
  return {CitationCountTarget{}, FacetOp::kGe, static_cast<double>(n)};
}

// kUnknownColumn when a content target names no column; kTypeMismatch when
// it names a text column.
Status ValidateFilters(const ComparisonTable& table,
                       std::span<const FacetFilter> filters);

// Keeps rows satisfying every filter, in input order. A row whose targeted
// value is absent is dropped. No filters -> the table unchanged.
Result<ComparisonTable> ApplyFacets(const ComparisonTable& table,
                                    std::span<const FacetFilter> filters);

struct FilterOutcome {
  ComparisonTable table;
  std::size_t kept = 0;
  // Dropped with every targeted value present.
  std::size_t filtered = 0;
  // Dropped because some targeted value was absent.
  std::size_t unknown = 0;
};

Result<FilterOutcome> FilterComparison(const ComparisonTable& table,
                                       std::span<const FacetFilter> filters);

struct FacetRange {
  std::optional<double> min;
  std::optional<double> max;
  std::size_t present = 0;

  bool operator==(const FacetRange&) const = default;
};

struct FacetSummaryEntry {
  FacetTarget target;
  FacetRange range;
};

// citation_count first, then numeric columns in column order.
std::vector<FacetSummaryEntry> FacetSummary(const ComparisonTable& table);

using CitationCounter =
    std::function<Result<CitationCounts>(std::span<const Doi>)>;

// Attaches counts to rows with a DOI; rows without one, or whose DOI is
// unknown, get an absent count. Other fields are untouched.
Result<ComparisonTable> EnrichWithCitations(const ComparisonTable& table,
                                            const CitationCounter& counter);

// Comparison document: {title, columns: [{name, kind}],
// rows: [{doi?, label, cells: {column: value}, citation_count?}]}.
Result<ComparisonTable> ParseTable(const nlohmann::json& document);
Result<ComparisonTable> ParseTableText(std::string_view text);
nlohmann::ordered_json ToJson(const ComparisonTable& table);

// {"target": "citation_count" | "column", "column"?: name, "op": "ge",
//  "threshold": n}
Result<FacetFilter> ParseFilter(const nlohmann::json& document);
nlohmann::ordered_json ToJson(const FacetFilter& filter);

// `<column> <op> <number>` with op one of < <= > >= = ==.
Result<FacetFilter> ParseWhere(std::string_view expression);

nlohmann::ordered_json ToJson(const std::vector<FacetSummaryEntry>& summary);
nlohmann::ordered_json SummaryJson(const FilterOutcome& outcome);

}  // namespace scholarfed::facets

#endif  // SCHOLARFED_FACETS_H_
