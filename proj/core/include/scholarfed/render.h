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

#ifndef SCHOLARFED_RENDER_H_
#define SCHOLARFED_RENDER_H_

// Selection-driven JSON rendering of merged contexts, using the unified
// schema's field names. Keys follow selection order.

#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "scholarfed/domain.h"
#include "scholarfed/gateway.h"
#include "scholarfed/plan.h"

namespace scholarfed {

nlohmann::ordered_json RenderPaper(const std::vector<Selection>& selection,
                                   const WorkContext& work,
                                   const std::set<FieldGroup>& failed);
nlohmann::ordered_json RenderPerson(const std::vector<Selection>& selection,
                                    const PersonContext& person,
                                    const std::set<FieldGroup>& failed);
nlohmann::ordered_json RenderCitationCounts(
    const std::vector<Selection>& selection, const std::vector<Doi>& order,
    const CitationCounts& counts);

}  // namespace scholarfed

#endif  // SCHOLARFED_RENDER_H_
