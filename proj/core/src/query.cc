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

#include "scholarfed/query.h"

#include <cctype>
#include <charconv>
#include <string>

namespace scholarfed::query {
namespace {

enum class TokenKind { kName, kString, kInt, kFloat, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Result<Token> Next() {
    SkipIgnored();
    Token token;
    token.line = line_;
    token.column = column_;
    if (pos_ >= text_.size()) return token;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      token.kind = TokenKind::kName;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        token.text.push_back(Advance());
      }
      return token;
    }
    if (c == '"') return LexString(token);
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return LexNumber(token);
    static constexpr std::string_view kPunct = "{}()[]:!$=@";
    if (kPunct.find(c) != std::string_view::npos) {
      token.kind = TokenKind::kPunct;
      token.text.push_back(Advance());
      return token;
    }
    if (text_.substr(pos_, 3) == "...") {
      return Fail(token, "fragments are not supported");
    }
    return Fail(token, std::string("unexpected character '") + c + "'");
  }

 private:
  static Error Fail(const Token& at, const std::string& message) {
    return MakeError(ErrorKind::kSchemaError, std::to_string(at.line) + ":" +
                                                  std::to_string(at.column) + ": " +
                                                  message);
  }

  char Advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void SkipIgnored() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else if (c == ',' || std::isspace(static_cast<unsigned char>(c)) ||
                 static_cast<unsigned char>(c) == 0xEF) {
        // 0xEF: tolerate a UTF-8 byte order mark.
        if (static_cast<unsigned char>(c) == 0xEF) {
          if (text_.substr(pos_, 3) != "\xEF\xBB\xBF") return;
          Advance();
          Advance();
        }
        Advance();
      } else {
        return;
      }
    }
  }

  Result<Token> LexString(Token token) {
    token.kind = TokenKind::kString;
    Advance();
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        return Fail(token, "unterminated string");
      }
      char c = Advance();
      if (c == '"') return token;
      if (c != '\\') {
        token.text.push_back(c);
        continue;
      }
      if (pos_ >= text_.size()) return Fail(token, "unterminated string");
      char e = Advance();
      switch (e) {
        case '"': token.text.push_back('"'); break;
        case '\\': token.text.push_back('\\'); break;
        case '/': token.text.push_back('/'); break;
        case 'b': token.text.push_back('\b'); break;
        case 'f': token.text.push_back('\f'); break;
        case 'n': token.text.push_back('\n'); break;
        case 'r': token.text.push_back('\r'); break;
        case 't': token.text.push_back('\t'); break;
        case 'u': {
          if (pos_ + 4 > text_.size()) return Fail(token, "bad \\u escape");
          unsigned code = 0;
          auto digits = text_.substr(pos_, 4);
          auto [ptr, ec] =
              std::from_chars(digits.data(), digits.data() + 4, code, 16);
          if (ec != std::errc() || ptr != digits.data() + 4) {
            return Fail(token, "bad \\u escape");
          }
          for (int i = 0; i < 4; ++i) Advance();
          AppendUtf8(token.text, code);
          break;
        }
        default:
          return Fail(token, std::string("bad escape '\\") + e + "'");
      }
    }
  }

  static void AppendUtf8(std::string& out, unsigned code) {
    if (code < 0x80) {
      out.push_back(static_cast<char>(code));
    } else if (code < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (code >> 6)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xE0 | (code >> 12)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    }
  }

  Result<Token> LexNumber(Token token) {
    token.kind = TokenKind::kInt;
    if (text_[pos_] == '-') token.text.push_back(Advance());
    auto digits = [&] {
      bool any = false;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        token.text.push_back(Advance());
        any = true;
      }
      return any;
    };
    if (!digits()) return Fail(token, "malformed number");
    if (pos_ < text_.size() && text_[pos_] == '.') {
      token.kind = TokenKind::kFloat;
      token.text.push_back(Advance());
      if (!digits()) return Fail(token, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      token.kind = TokenKind::kFloat;
      token.text.push_back(Advance());
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        token.text.push_back(Advance());
      }
      if (!digits()) return Fail(token, "malformed number");
    }
    return token;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {}

  Result<Document> ParseDocument() {
    if (Status s = Shift(); !s.ok()) return s.error();
    Document document;
    if (IsName("query")) {
      if (Status s = Shift(); !s.ok()) return s.error();
      if (current_.kind == TokenKind::kName) {
        document.operation_name = current_.text;
        if (Status s = Shift(); !s.ok()) return s.error();
      }
      if (IsPunct("(")) {
        if (Status s = ParseVariableDefinitions(document); !s.ok()) return s.error();
      }
    } else if (IsName("mutation") || IsName("subscription")) {
      return Fail("only query operations are supported");
    }
    if (!IsPunct("{")) return Fail("expected '{' to open the query");
    Result<std::vector<Field>> roots = ParseSelectionSet();
    if (!roots.ok()) return roots.error();
    document.roots = std::move(*roots);
    if (current_.kind != TokenKind::kEnd) {
      return Fail("unexpected '" + current_.text + "' after the query");
    }
    return document;
  }

 private:
  Error Fail(const std::string& message) const {
    return MakeError(ErrorKind::kSchemaError, std::to_string(current_.line) + ":" +
                                                  std::to_string(current_.column) +
                                                  ": " + message);
  }

  Status Shift() {
    Result<Token> token = lexer_.Next();
    if (!token.ok()) return token.error();
    current_ = std::move(*token);
    return {};
  }

  bool IsPunct(std::string_view p) const {
    return current_.kind == TokenKind::kPunct && current_.text == p;
  }
  bool IsName(std::string_view n) const {
    return current_.kind == TokenKind::kName && current_.text == n;
  }

  Status Expect(std::string_view p) {
    if (!IsPunct(p)) {
      return Fail("expected '" + std::string(p) + "'" +
                  (current_.kind == TokenKind::kEnd ? " before end of query"
                                                    : ", got '" + current_.text + "'"));
    }
    return Shift();
  }

  Result<std::string> ExpectName() {
    if (current_.kind != TokenKind::kName) {
      return Fail(current_.kind == TokenKind::kEnd
                      ? "expected a name before end of query"
                      : "expected a name, got '" + current_.text + "'");
    }
    std::string name = current_.text;
    if (Status s = Shift(); !s.ok()) return s.error();
    return name;
  }

  Status ParseVariableDefinitions(Document& document) {
    if (Status s = Expect("("); !s.ok()) return s;
    while (!IsPunct(")")) {
      if (Status s = Expect("$"); !s.ok()) return s;
      Result<std::string> name = ExpectName();
      if (!name.ok()) return name.error();
      if (Status s = Expect(":"); !s.ok()) return s;
      if (Status s = SkipType(); !s.ok()) return s;
      VariableDefinition definition{*name, std::nullopt};
      if (IsPunct("=")) {
        if (Status s = Shift(); !s.ok()) return s;
        Result<Value> value = ParseValue(/*constant=*/true);
        if (!value.ok()) return value.error();
        definition.default_value = std::move(*value);
      }
      document.variables.push_back(std::move(definition));
    }
    return Expect(")");
  }

  Status SkipType() {
    if (IsPunct("[")) {
      if (Status s = Shift(); !s.ok()) return s;
      if (Status s = SkipType(); !s.ok()) return s;
      if (Status s = Expect("]"); !s.ok()) return s;
    } else {
      Result<std::string> name = ExpectName();
      if (!name.ok()) return name.error();
    }
    if (IsPunct("!")) return Shift();
    return {};
  }

  Result<std::vector<Field>> ParseSelectionSet() {
    if (Status s = Expect("{"); !s.ok()) return s.error();
    std::vector<Field> fields;
    while (!IsPunct("}")) {
      if (current_.kind == TokenKind::kEnd) return Fail("unclosed '{'");
      if (IsPunct("@")) return Fail("directives are not supported");
      Result<Field> field = ParseField();
      if (!field.ok()) return field.error();
      fields.push_back(std::move(*field));
    }
    if (fields.empty()) return Fail("empty selection set");
    if (Status s = Shift(); !s.ok()) return s.error();
    return fields;
  }

  Result<Field> ParseField() {
    Field field;
    field.line = current_.line;
    field.column = current_.column;
    Result<std::string> name = ExpectName();
    if (!name.ok()) return name.error();
    field.name = std::move(*name);
    if (IsPunct(":")) return Fail("aliases are not supported");
    if (IsPunct("(")) {
      if (Status s = Shift(); !s.ok()) return s.error();
      while (!IsPunct(")")) {
        Result<std::string> arg = ExpectName();
        if (!arg.ok()) return arg.error();
        if (Status s = Expect(":"); !s.ok()) return s.error();
        Result<Value> value = ParseValue(/*constant=*/false);
        if (!value.ok()) return value.error();
        field.arguments.emplace_back(std::move(*arg), std::move(*value));
      }
      if (Status s = Shift(); !s.ok()) return s.error();
    }
    if (IsPunct("{")) {
      field.has_selection_set = true;
      Result<std::vector<Field>> selections = ParseSelectionSet();
      if (!selections.ok()) return selections.error();
      field.selections = std::move(*selections);
    }
    return field;
  }

  Result<Value> ParseValue(bool constant) {
    Value value;
    switch (current_.kind) {
      case TokenKind::kString:
        value.kind = Value::Kind::kString;
        value.text = current_.text;
        break;
      case TokenKind::kInt:
      case TokenKind::kFloat: {
        value.kind = current_.kind == TokenKind::kInt ? Value::Kind::kInt
                                                      : Value::Kind::kFloat;
        value.text = current_.text;
        value.number = std::stod(current_.text);
        break;
      }
      case TokenKind::kName:
        if (current_.text == "true" || current_.text == "false") {
          value.kind = Value::Kind::kBool;
          value.boolean = current_.text == "true";
        } else if (current_.text == "null") {
          value.kind = Value::Kind::kNull;
        } else {
          value.kind = Value::Kind::kEnum;
          value.text = current_.text;
        }
        break;
      case TokenKind::kPunct:
        if (current_.text == "$") {
          if (constant) return Fail("variables are not allowed here");
          if (Status s = Shift(); !s.ok()) return s.error();
          Result<std::string> name = ExpectName();
          if (!name.ok()) return name.error();
          value.kind = Value::Kind::kVariable;
          value.text = std::move(*name);
          return value;
        }
        if (current_.text == "[") {
          if (Status s = Shift(); !s.ok()) return s.error();
          value.kind = Value::Kind::kList;
          while (!IsPunct("]")) {
            if (current_.kind == TokenKind::kEnd) return Fail("unclosed '['");
            Result<Value> item = ParseValue(constant);
            if (!item.ok()) return item.error();
            value.list.push_back(std::move(*item));
          }
          break;
        }
        if (current_.text == "{") return Fail("object values are not supported");
        return Fail("expected a value, got '" + current_.text + "'");
      case TokenKind::kEnd:
        return Fail("expected a value before end of query");
    }
    if (Status s = Shift(); !s.ok()) return s.error();
    return value;
  }

  Lexer lexer_;
  Token current_;
};

}  // namespace

const Value* Field::Argument(std::string_view name) const {
  for (const auto& [arg, value] : arguments) {
    if (arg == name) return &value;
  }
  return nullptr;
}

Result<Document> Parse(std::string_view text) { return Parser(text).ParseDocument(); }

Result<nlohmann::json> Resolve(const Value& value, const Document& document,
                               const nlohmann::json& variables) {
  switch (value.kind) {
    case Value::Kind::kNull: return nlohmann::json(nullptr);
    case Value::Kind::kBool: return nlohmann::json(value.boolean);
    case Value::Kind::kInt: return nlohmann::json(static_cast<std::int64_t>(value.number));
    case Value::Kind::kFloat: return nlohmann::json(value.number);
    case Value::Kind::kString:
    case Value::Kind::kEnum: return nlohmann::json(value.text);
    case Value::Kind::kList: {
      nlohmann::json out = nlohmann::json::array();
      for (const Value& item : value.list) {
        Result<nlohmann::json> resolved = Resolve(item, document, variables);
        if (!resolved.ok()) return resolved.error();
        out.push_back(std::move(*resolved));
      }
      return out;
    }
    case Value::Kind::kVariable: {
      const VariableDefinition* definition = nullptr;
      for (const VariableDefinition& d : document.variables) {
        if (d.name == value.text) definition = &d;
      }
      if (definition == nullptr) {
        return MakeError(ErrorKind::kSchemaError,
                         "variable $" + value.text + " is not defined");
      }
      if (variables.is_object() && variables.contains(value.text)) {
        return variables[value.text];
      }
      if (definition->default_value) {
        return Resolve(*definition->default_value, document, variables);
      }
      return MakeError(ErrorKind::kSchemaError,
                       "no value for variable $" + value.text);
    }
  }
  return MakeError(ErrorKind::kSchemaError, "unsupported value");
}

}  // namespace scholarfed::query
