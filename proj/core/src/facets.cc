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

#include "scholarfed/facets.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace scholarfed::facets {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Error Invalid(const std::string& message) {
  return MakeError(ErrorKind::kInvalidArgument, message);
}

std::string_view Trim(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

bool Compare(double value, FacetOp op, double threshold) {
  switch (op) {
    case FacetOp::kLt: return value < threshold;
    case FacetOp::kLe: return value <= threshold;
    case FacetOp::kGt: return value > threshold;
    case FacetOp::kGe: return value >= threshold;
    case FacetOp::kEq: return value == threshold;
  }
  return false;
}

std::optional<double> TargetValue(const Row& row, const FacetTarget& target) {
  if (std::holds_alternative<CitationCountTarget>(target)) {
    if (!row.citation_count) return std::nullopt;
    return static_cast<double>(*row.citation_count);
  }
  const std::string& column = std::get<ContentColumn>(target).name;
  auto it = row.cells.find(column);
  if (it == row.cells.end()) return std::nullopt;
  if (const double* number = std::get_if<double>(&it->second)) return *number;
  return std::nullopt;
}

// Integral ranges render as integers so counts stay counts.
OrderedJson Number(double value, bool integral) {
  if (integral) return static_cast<std::int64_t>(value);
  return value;
}

void AppendRange(OrderedJson& out, const FacetRange& range, bool integral) {
  out["min"] = range.min ? Number(*range.min, integral) : OrderedJson(nullptr);
  out["max"] = range.max ? Number(*range.max, integral) : OrderedJson(nullptr);
  out["present"] = range.present;
}

}  // namespace

const Column* ComparisonTable::FindColumn(std::string_view name) const {
  for (const Column& column : columns) {
    if (column.name == name) return &column;
  }
  return nullptr;
}

Status Validate(const ComparisonTable& table) {
  std::set<std::string> names;
  for (const Column& column : table.columns) {
    if (column.name.empty()) return Invalid("column names must be non-empty");
    if (!names.insert(column.name).second) {
      return Invalid("duplicate column '" + column.name + "'");
    }
  }
  for (const Row& row : table.rows) {
    if (row.citation_count && *row.citation_count < 0) {
      return Invalid("row '" + row.label + "' has a negative citation count");
    }
    for (const auto& [name, value] : row.cells) {
      const Column* column = table.FindColumn(name);
      if (column == nullptr) {
        return MakeError(ErrorKind::kUnknownColumn,
                         "row '" + row.label + "' has a cell for unknown column '" + name + "'");
      }
      if (std::holds_alternative<std::monostate>(value)) continue;
      bool numeric = std::holds_alternative<double>(value);
      if (numeric != (column->kind == ColumnKind::kNumeric)) {
        return MakeError(ErrorKind::kTypeMismatch, "row '" + row.label + "' column '" +
                                                       name + "' holds the wrong type");
      }
      if (numeric && !std::isfinite(std::get<double>(value))) {
        return Invalid("row '" + row.label + "' column '" + name + "' is not finite");
      }
    }
  }
  return {};
}

std::string_view FacetOpName(FacetOp op) {
  switch (op) {
    case FacetOp::kLt: return "lt";
    case FacetOp::kLe: return "le";
    case FacetOp::kGt: return "gt";
    case FacetOp::kGe: return "ge";
    case FacetOp::kEq: return "eq";
  }
  return "ge";
}

Result<FacetOp> FacetOpFromName(std::string_view name) {
  for (FacetOp op : {FacetOp::kLt, FacetOp::kLe, FacetOp::kGt, FacetOp::kGe, FacetOp::kEq}) {
    if (FacetOpName(op) == name) return op;
  }
  return Invalid("unknown operator '" + std::string(name) + "'; expected lt, le, gt, ge or eq");
}

Status ValidateFilters(const ComparisonTable& table, std::span<const FacetFilter> filters) {
  for (const FacetFilter& filter : filters) {
    if (!std::isfinite(filter.threshold)) return Invalid("threshold must be finite");
    const auto* content = std::get_if<ContentColumn>(&filter.target);
    if (content == nullptr) continue;
    const Column* column = table.FindColumn(content->name);
    if (column == nullptr) {
      return MakeError(ErrorKind::kUnknownColumn, "unknown column '" + content->name + "'");
    }
    if (column->kind != ColumnKind::kNumeric) {
      return MakeError(ErrorKind::kTypeMismatch,
                       "column '" + content->name + "' is not numeric");
    }
  }
  return {};
}

Result<FilterOutcome> FilterComparison(const ComparisonTable& table,
                                       std::span<const FacetFilter> filters) {
  if (Status s = ValidateFilters(table, filters); !s.ok()) return s.error();
  FilterOutcome outcome;
  outcome.table.title = table.title;
  outcome.table.columns = table.columns;
  for (const Row& row : table.rows) {
    bool missing = false;
    bool pass = true;
    for (const FacetFilter& filter : filters) {
      std::optional<double> value = TargetValue(row, filter.target);
      if (!value) {
        missing = true;
      } else if (!Compare(*value, filter.op, filter.threshold)) {
        pass = false;
      }
    }
    if (missing) {
      ++outcome.unknown;
    } else if (!pass) {
      ++outcome.filtered;
    } else {
      ++outcome.kept;
      outcome.table.rows.push_back(row);
    }
  }
  return outcome;
}

Result<ComparisonTable> ApplyFacets(const ComparisonTable& table,
                                    std::span<const FacetFilter> filters) {
  Result<FilterOutcome> outcome = FilterComparison(table, filters);
  if (!outcome.ok()) return outcome.error();
  return std::move(outcome->table);
}

std::vector<FacetSummaryEntry> FacetSummary(const ComparisonTable& table) {
  std::vector<FacetSummaryEntry> summary;
  summary.push_back({CitationCountTarget{}, {}});
  for (const Column& column : table.columns) {
    if (column.kind == ColumnKind::kNumeric) summary.push_back({ContentColumn{column.name}, {}});
  }
  for (FacetSummaryEntry& entry : summary) {
    for (const Row& row : table.rows) {
      std::optional<double> value = TargetValue(row, entry.target);
      if (!value) continue;
      FacetRange& range = entry.range;
      range.min = range.min ? std::min(*range.min, *value) : *value;
      range.max = range.max ? std::max(*range.max, *value) : *value;
      ++range.present;
    }
  }
  return summary;
}

Result<ComparisonTable> EnrichWithCitations(const ComparisonTable& table,
                                            const CitationCounter& counter) {
  std::vector<Doi> dois;
  for (const Row& row : table.rows) {
    if (row.doi && std::find(dois.begin(), dois.end(), *row.doi) == dois.end()) {
      dois.push_back(*row.doi);
    }
  }
  CitationCounts counts;
  if (!dois.empty()) {
    Result<CitationCounts> fetched = counter(dois);
    if (!fetched.ok()) return fetched.error();
    counts = std::move(*fetched);
  }
  ComparisonTable out = table;
  for (Row& row : out.rows) {
    row.citation_count = std::nullopt;
    if (!row.doi) continue;
    auto it = counts.find(*row.doi);
    if (it != counts.end()) row.citation_count = it->second;
  }
  return out;
}

Result<ComparisonTable> ParseTable(const Json& document) {
  if (!document.is_object()) return Invalid("comparison must be a JSON object");
  ComparisonTable table;
  if (auto it = document.find("title"); it != document.end() && !it->is_null()) {
    if (!it->is_string()) return Invalid("title must be a string");
    table.title = it->get<std::string>();
  }
  auto columns = document.find("columns");
  if (columns == document.end() || !columns->is_array()) {
    return Invalid("columns must be an array");
  }
  for (const Json& item : *columns) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
      return Invalid("each column needs a string name");
    }
    Column column{item["name"].get<std::string>(), ColumnKind::kText};
    std::string kind = item.value("kind", "text");
    if (kind == "numeric") {
      column.kind = ColumnKind::kNumeric;
    } else if (kind != "text") {
      return Invalid("column '" + column.name + "' has unknown kind '" + kind + "'");
    }
    table.columns.push_back(std::move(column));
  }
  auto rows = document.find("rows");
  if (rows == document.end() || !rows->is_array()) return Invalid("rows must be an array");
  for (const Json& item : *rows) {
    if (!item.is_object()) return Invalid("each row must be an object");
    Row row;
    if (auto it = item.find("label"); it != item.end() && it->is_string()) {
      row.label = it->get<std::string>();
    } else {
      return Invalid("each row needs a string label");
    }
    if (auto it = item.find("doi"); it != item.end() && !it->is_null()) {
      if (!it->is_string()) return Invalid("row '" + row.label + "' doi must be a string");
      Result<Doi> doi = NormalizeDoi(it->get<std::string>());
      if (!doi.ok()) return doi.error();
      row.doi = *doi;
    }
    if (auto it = item.find("citation_count"); it != item.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        return Invalid("row '" + row.label + "' citation_count must be an integer");
      }
      row.citation_count = it->get<std::int64_t>();
    }
    if (auto it = item.find("cells"); it != item.end() && !it->is_null()) {
      if (!it->is_object()) return Invalid("row '" + row.label + "' cells must be an object");
      for (const auto& [name, value] : it->items()) {
        if (value.is_null()) {
          row.cells[name] = std::monostate{};
        } else if (value.is_number()) {
          row.cells[name] = value.get<double>();
        } else if (value.is_string()) {
          row.cells[name] = value.get<std::string>();
        } else {
          return MakeError(ErrorKind::kTypeMismatch,
                           "row '" + row.label + "' column '" + name +
                               "' must be a number, string or null");
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (Status s = Validate(table); !s.ok()) return s.error();
  return table;
}

Result<ComparisonTable> ParseTableText(std::string_view text) {
  Json document = Json::parse(text, nullptr, false);
  if (document.is_discarded()) return Invalid("comparison is not valid JSON");
  return ParseTable(document);
}

OrderedJson ToJson(const ComparisonTable& table) {
  OrderedJson out;
  out["title"] = table.title;
  OrderedJson columns = OrderedJson::array();
  for (const Column& column : table.columns) {
    columns.push_back(
        {{"name", column.name},
         {"kind", column.kind == ColumnKind::kNumeric ? "numeric" : "text"}});
  }
  out["columns"] = std::move(columns);
  OrderedJson rows = OrderedJson::array();
  for (const Row& row : table.rows) {
    OrderedJson item;
    item["doi"] = row.doi ? OrderedJson(row.doi->value()) : OrderedJson(nullptr);
    item["label"] = row.label;
    OrderedJson cells = OrderedJson::object();
    for (const Column& column : table.columns) {
      auto it = row.cells.find(column.name);
      if (it == row.cells.end()) continue;
      if (const double* number = std::get_if<double>(&it->second)) {
        cells[column.name] = *number;
      } else if (const std::string* text = std::get_if<std::string>(&it->second)) {
        cells[column.name] = *text;
      } else {
        cells[column.name] = nullptr;
      }
    }
    item["cells"] = std::move(cells);
    item["citation_count"] =
        row.citation_count ? OrderedJson(*row.citation_count) : OrderedJson(nullptr);
    rows.push_back(std::move(item));
  }
  out["rows"] = std::move(rows);
  return out;
}

Result<FacetFilter> ParseFilter(const Json& document) {
  if (!document.is_object()) return Invalid("filter must be a JSON object");
  FacetFilter filter;
  std::string target = document.value("target", "");
  if (target == "citation_count") {
    filter.target = CitationCountTarget{};
  } else if (target == "column") {
    auto column = document.find("column");
    if (column == document.end() || !column->is_string()) {
      return Invalid("column filter needs a string 'column'");
    }
    filter.target = ContentColumn{column->get<std::string>()};
  } else {
    return Invalid("filter target must be 'citation_count' or 'column'");
  }
  auto op = document.find("op");
  if (op == document.end() || !op->is_string()) return Invalid("filter needs a string 'op'");
  Result<FacetOp> parsed = FacetOpFromName(op->get<std::string>());
  if (!parsed.ok()) return parsed.error();
  filter.op = *parsed;
  auto threshold = document.find("threshold");
  if (threshold == document.end() || !threshold->is_number()) {
    return Invalid("filter needs a numeric 'threshold'");
  }
  filter.threshold = threshold->get<double>();
  return filter;
}

OrderedJson ToJson(const FacetFilter& filter) {
  OrderedJson out;
  if (const auto* column = std::get_if<ContentColumn>(&filter.target)) {
    out["target"] = "column";
    out["column"] = column->name;
  } else {
    out["target"] = "citation_count";
  }
  out["op"] = FacetOpName(filter.op);
  out["threshold"] = filter.threshold;
  return out;
}

Result<FacetFilter> ParseWhere(std::string_view expression) {
  static constexpr std::pair<std::string_view, FacetOp> kOps[] = {
      {"<=", FacetOp::kLe}, {">=", FacetOp::kGe}, {"==", FacetOp::kEq},
      {"<", FacetOp::kLt},  {">", FacetOp::kGt},  {"=", FacetOp::kEq},
  };
  std::size_t at = expression.find_first_of("<>=");
  if (at == std::string_view::npos) {
    return Invalid("expected '<column> <op> <number>', got '" + std::string(expression) + "'");
  }
  if (at > 0 && expression[at - 1] == '!') {
    return Invalid("bad operator in '" + std::string(expression) + "'");
  }
  std::string_view rest = expression.substr(at);
  for (const auto& [symbol, op] : kOps) {
    if (rest.substr(0, symbol.size()) != symbol) continue;
    std::string_view column = Trim(expression.substr(0, at));
    std::string_view number = Trim(rest.substr(symbol.size()));
    if (column.empty()) {
      return Invalid("missing column name in '" + std::string(expression) + "'");
    }
    double threshold = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), threshold);
    if (number.empty() || ec != std::errc() || ptr != number.data() + number.size() ||
        !std::isfinite(threshold)) {
      return Invalid("bad threshold '" + std::string(number) + "'");
    }
    return FacetFilter{ContentColumn{std::string(column)}, op, threshold};
  }
  return Invalid("bad operator in '" + std::string(expression) + "'");
}

OrderedJson ToJson(const std::vector<FacetSummaryEntry>& summary) {
  OrderedJson out = OrderedJson::array();
  for (const FacetSummaryEntry& entry : summary) {
    OrderedJson item;
    if (const auto* column = std::get_if<ContentColumn>(&entry.target)) {
      item["target"] = "column";
      item["column"] = column->name;
      AppendRange(item, entry.range, false);
    } else {
      item["target"] = "citation_count";
      AppendRange(item, entry.range, true);
    }
    out.push_back(std::move(item));
  }
  return out;
}

OrderedJson SummaryJson(const FilterOutcome& outcome) {
  return {{"kept", outcome.kept}, {"filtered", outcome.filtered}, {"unknown", outcome.unknown}};
}

}  // namespace scholarfed::facets
