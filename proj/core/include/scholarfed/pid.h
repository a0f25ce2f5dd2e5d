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

#ifndef SCHOLARFED_PID_H_
#define SCHOLARFED_PID_H_

#include <compare>
#include <string>
#include <string_view>

#include "scholarfed/result.h"

namespace scholarfed {

// A DOI in canonical form: lowercase `10.<registrant>/<suffix>` without any
// resolver prefix. Only constructible through NormalizeDoi.
class Doi {
 public:
  const std::string& value() const { return value_; }
  std::string url() const { return "https://doi.org/" + value_; }

  friend bool operator==(const Doi&, const Doi&) = default;
  friend auto operator<=>(const Doi&, const Doi&) = default;

 private:
  friend Result<Doi> NormalizeDoi(std::string_view raw);
  explicit Doi(std::string value) : value_(std::move(value)) {}

  std::string value_;
};

// An ORCID iD in canonical bare form `dddd-dddd-dddd-dddC` with an uppercase
// `X` check character.
class OrcidId {
 public:
  const std::string& value() const { return value_; }
  std::string url() const { return "https://orcid.org/" + value_; }
  // The 15 digits covered by the check character.
  std::string digits() const;

  friend bool operator==(const OrcidId&, const OrcidId&) = default;
  friend auto operator<=>(const OrcidId&, const OrcidId&) = default;

 private:
  friend Result<OrcidId> NormalizeOrcid(std::string_view raw);
  explicit OrcidId(std::string value) : value_(std::move(value)) {}

  std::string value_;
};

// Organization identifier carried verbatim; never resolved.
class OrgId {
 public:
  static Result<OrgId> Make(std::string value);

  const std::string& value() const { return value_; }

  friend bool operator==(const OrgId&, const OrgId&) = default;

 private:
  explicit OrgId(std::string value) : value_(std::move(value)) {}

  std::string value_;
};

// Accepts bare DOIs, `doi:` prefixes and doi.org / dx.doi.org resolver URLs
// over http or https, in any case and with surrounding whitespace.
Result<Doi> NormalizeDoi(std::string_view raw);

// Accepts bare iDs and orcid.org URLs. Fails with kMalformedPid on shape
// violations and kChecksumMismatch when the check character is wrong.
Result<OrcidId> NormalizeOrcid(std::string_view raw);

// ISO 7064 MOD 11-2 check character over exactly 15 decimal digits.
Result<char> OrcidCheckCharacter(std::string_view digits);

// True when `raw` looks like an ORCID (bare or URL), regardless of checksum.
bool LooksLikeOrcid(std::string_view raw);

}  // namespace scholarfed

#endif  // SCHOLARFED_PID_H_
