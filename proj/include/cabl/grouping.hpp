/*
   Copyright 2026 The cabl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Compositional grouping from the pairwise match relation.

#include "cabl/core_model.hpp"
#include "cabl/ingest.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cabl {

enum class GroupingMode { connected_components, maximal_cliques };

std::string_view to_string(GroupingMode mode);
// Accepts "cc", "connected_components", "clique", "maximal_cliques".
GroupingMode parse_grouping_mode(std::string_view text);

struct GroupingResult {
    std::vector<std::string> ids;                  // matrix row order (dataset order)
    std::vector<std::vector<bool>> match_matrix;   // symmetric, diagonal true
    GroupingMode mode = GroupingMode::connected_components;
    // Member ids sorted; groups sorted by their smallest member id.
    std::vector<std::vector<std::string>> groups;
    // (a, b, c): a-b and b-c match, a-c does not; a < c.
    std::vector<std::array<std::string, 3>> nontransitive_triples;
    // Matched pairs whose decision rests on an exact interval touch.
    std::vector<std::pair<std::string, std::string>> touching_pairs;
    bool groups_overlap = false;                   // only possible for cliques
    MatchCriterion criterion;
};

// Builds the match matrix under `criterion` (bias entries are ignored: one
// laboratory's measurements share their bias) and partitions it.
// Throws IncompletePanelError naming specimen and element.
GroupingResult group(const Dataset& dataset, const MatchCriterion& criterion,
                     GroupingMode mode = GroupingMode::connected_components);

struct BoxMatchRate {
    std::size_t pairs_total = 0;
    std::size_t pairs_matched = 0;
    double rate = 0.0;    // 0 when there are no same-lot pairs
};

// Matched fraction among unordered pairs of specimens that share a lot.
BoxMatchRate within_box_match_rate(const Dataset& dataset, const MatchCriterion& criterion);

}  // namespace cabl
