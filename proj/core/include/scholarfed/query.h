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

#ifndef SCHOLARFED_QUERY_H_
#define SCHOLARFED_QUERY_H_

// Parser for the GraphQL-compatible subset accepted at the gateway:
// anonymous or named query operations with variable definitions, fields
// with arguments and nested selection sets, `#` comments and insignificant
// commas. Fragments, directives and aliases are not supported.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scholarfed/result.h"

namespace scholarfed::query {

struct Value {
  enum class Kind { kNull, kBool, kInt, kFloat, kString, kEnum, kVariable, kList };

  Kind kind = Kind::kNull;
  // String contents, enum name or variable name.
  std::string text;
  bool boolean = false;
  double number = 0;
  std::vector<Value> list;
};

struct Field {
  std::string name;
  std::vector<std::pair<std::string, Value>> arguments;
  std::vector<Field> selections;
  bool has_selection_set = false;
  int line = 0;
  int column = 0;

  const Value* Argument(std::string_view name) const;
};

struct VariableDefinition {
  std::string name;
  std::optional<Value> default_value;
};

struct Document {
  std::optional<std::string> operation_name;
  std::vector<VariableDefinition> variables;
  std::vector<Field> roots;
};

// kSchemaError with line:column on syntax errors.
Result<Document> Parse(std::string_view text);

// Substitutes variables (from the request's `variables` object, then
// definition defaults) and converts to JSON. Unbound variables are
// kSchemaError.
Result<nlohmann::json> Resolve(const Value& value, const Document& document,
                               const nlohmann::json& variables);

}  // namespace scholarfed::query

#endif  // SCHOLARFED_QUERY_H_
