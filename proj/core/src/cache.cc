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

#include "scholarfed/cache.h"

#include <mutex>

namespace scholarfed {

namespace {
constexpr std::chrono::seconds kDefaultTtl{15 * 60};
}  // namespace

ResponseCache::ResponseCache(std::map<Source, std::chrono::seconds> ttls, Clock clock)
    : ttls_(std::move(ttls)), clock_(std::move(clock)) {}

std::chrono::seconds ResponseCache::TtlFor(Source source) const {
  auto it = ttls_.find(source);
  return it == ttls_.end() ? kDefaultTtl : it->second;
}

std::optional<SourceResult> ResponseCache::Get(const CacheKey& key) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end() || clock_() >= it->second.expires_at) return std::nullopt;
  SourceResult result = it->second.result;
  result.from_cache = true;
  return result;
}

void ResponseCache::Put(const CacheKey& key, const SourceResult& result) {
  std::chrono::seconds ttl = TtlFor(key.source);
  if (ttl.count() <= 0) return;
  auto now = clock_();
  std::unique_lock lock(mu_);
  for (auto it = entries_.begin(); it != entries_.end();) {
    it = now >= it->second.expires_at ? entries_.erase(it) : std::next(it);
  }
  entries_.insert_or_assign(key, Entry{result, now + ttl});
}

void ResponseCache::Clear() {
  std::unique_lock lock(mu_);
  entries_.clear();
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

}  // namespace scholarfed
