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

#include "scholarfed/pid.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

namespace scholarfed {
namespace {

bool IsSpace(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  });
  return out;
}

bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  return AsciiLower(s.substr(0, prefix.size())) == prefix;
}

// `10.` digits (`.` digits)* `/` non-empty suffix without whitespace.
bool MatchesDoiGrammar(std::string_view s) {
  if (s.size() < 5 || s.substr(0, 3) != "10.") return false;
  std::size_t i = 3;
  bool expect_digit = true;
  for (; i < s.size() && s[i] != '/'; ++i) {
    if (IsDigit(s[i])) {
      expect_digit = false;
    } else if (s[i] == '.' && !expect_digit) {
      expect_digit = true;
    } else {
      return false;
    }
  }
  if (expect_digit || i >= s.size()) return false;
  std::string_view suffix = s.substr(i + 1);
  if (suffix.empty()) return false;
  return std::none_of(suffix.begin(), suffix.end(), [](char c) {
    return IsSpace(c) || std::iscntrl(static_cast<unsigned char>(c));
  });
}

constexpr std::array<std::string_view, 6> kDoiPrefixes = {
    "https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
    "http://dx.doi.org/", "doi.org/", "doi:"};

constexpr std::array<std::string_view, 4> kOrcidPrefixes = {
    "https://orcid.org/", "http://orcid.org/", "orcid.org/", "orcid:"};

std::string_view StripOrcidPrefix(std::string_view s) {
  s = Trim(s);
  for (std::string_view prefix : kOrcidPrefixes) {
    if (StartsWithIgnoreCase(s, prefix)) {
      s.remove_prefix(prefix.size());
      break;
    }
  }
  return Trim(s);
}

bool MatchesOrcidShape(std::string_view s) {
  if (s.size() != 19) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 4 || i == 9 || i == 14) {
      if (s[i] != '-') return false;
    } else if (i == 18) {
      if (!IsDigit(s[i]) && s[i] != 'X' && s[i] != 'x') return false;
    } else if (!IsDigit(s[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace

Result<Doi> NormalizeDoi(std::string_view raw) {
  std::string_view trimmed = Trim(raw);
  for (std::string_view prefix : kDoiPrefixes) {
    if (StartsWithIgnoreCase(trimmed, prefix)) {
      trimmed.remove_prefix(prefix.size());
      trimmed = Trim(trimmed);
      break;
    }
  }
  std::string value = AsciiLower(trimmed);
  if (!MatchesDoiGrammar(value)) {
    return MakeError(ErrorKind::kMalformedPid,
                     "not a DOI: '" + std::string(raw) + "'");
  }
  return Doi(std::move(value));
}

Result<char> OrcidCheckCharacter(std::string_view digits) {
  if (digits.size() != 15 ||
      !std::all_of(digits.begin(), digits.end(), IsDigit)) {
    return MakeError(ErrorKind::kMalformedPid,
                     "ORCID checksum needs exactly 15 digits, got '" +
                         std::string(digits) + "'");
  }
  int total = 0;
  for (char c : digits) total = (total + (c - '0')) * 2;
  int result = (12 - total % 11) % 11;
  return result == 10 ? 'X' : static_cast<char>('0' + result);
}

std::string OrcidId::digits() const {
  std::string out;
  out.reserve(15);
  for (std::size_t i = 0; i + 1 < value_.size(); ++i) {
    if (value_[i] != '-') out.push_back(value_[i]);
  }
  return out;
}

bool LooksLikeOrcid(std::string_view raw) {
  return MatchesOrcidShape(StripOrcidPrefix(raw));
}

Result<OrcidId> NormalizeOrcid(std::string_view raw) {
  std::string value(StripOrcidPrefix(raw));
  if (!MatchesOrcidShape(value)) {
    return MakeError(ErrorKind::kMalformedPid,
                     "not an ORCID iD: '" + std::string(raw) + "'");
  }
  if (value.back() == 'x') value.back() = 'X';
  std::string digits;
  for (std::size_t i = 0; i + 1 < value.size(); ++i) {
    if (value[i] != '-') digits.push_back(value[i]);
  }
  Result<char> expected = OrcidCheckCharacter(digits);
  if (!expected.ok()) return expected.error();
  if (*expected != value.back()) {
    return MakeError(ErrorKind::kChecksumMismatch,
                     "ORCID iD '" + value + "' fails the MOD 11-2 check (expected '" +
                         std::string(1, *expected) + "')");
  }
  return OrcidId(std::move(value));
}

Result<OrgId> OrgId::Make(std::string value) {
  if (Trim(value).empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "empty organization id");
  }
  return OrgId(std::move(value));
}

}  // namespace scholarfed
