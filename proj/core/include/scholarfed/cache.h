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

#ifndef SCHOLARFED_CACHE_H_
#define SCHOLARFED_CACHE_H_

#include <chrono>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "scholarfed/domain.h"
#include "scholarfed/plan.h"

namespace scholarfed {

struct CacheKey {
  Source source;
  Operation op;
  std::string key;

  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

// Per-(source, operation, key) response cache with per-source TTLs. Safe for
// concurrent use. Only successful results are stored.
class ResponseCache {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  explicit ResponseCache(
      std::map<Source, std::chrono::seconds> ttls,
      Clock clock = [] { return std::chrono::system_clock::now(); });

  // Returned results have from_cache set.
  std::optional<SourceResult> Get(const CacheKey& key) const;
  void Put(const CacheKey& key, const SourceResult& result);
  void Clear();
  std::size_t size() const;

 private:
  struct Entry {
    SourceResult result;
    std::chrono::system_clock::time_point expires_at;
  };

  std::chrono::seconds TtlFor(Source source) const;

  std::map<Source, std::chrono::seconds> ttls_;
  Clock clock_;
  mutable std::shared_mutex mu_;
  std::map<CacheKey, Entry> entries_;
};

}  // namespace scholarfed

#endif  // SCHOLARFED_CACHE_H_
