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

// JSON and plain-text renderings of analysis results.

#include "cabl/evidence.hpp"
#include "cabl/grouping.hpp"
#include "cabl/ingest.hpp"
#include "cabl/matching.hpp"
#include "cabl/stats/distfit.hpp"
#include "cabl/stats/manova.hpp"
#include "cabl/stats/t_test.hpp"

#include <json.hpp>

#include <string>

namespace cabl {

using Json = nlohmann::ordered_json;

Json to_json(const Interval& i);
Json to_json(const ElementSeries& s);
Json to_json(const Specimen& s);
Json to_json(const Dataset& d);
Json to_json(const MatchCriterion& c);
Json to_json(const ElementMatch& m);
Json to_json(const MatchResult& r, const std::string& a_id, const std::string& b_id);
// groups as arrays of ids, matrix as an adjacency list, triples as id triplets.
Json to_json(const GroupingResult& g);
Json to_json(const BoxMatchRate& r);
Json to_json(const EvidenceResult& r);
Json to_json(const EquivalenceResult& r);
Json to_json(const stats::TTestResult& r);
Json to_json(const stats::ManovaResult& r);
Json to_json(const stats::FitReport& r);

// Conventions behind a matching or grouping result, echoed into reports.
Json decisions_block(const MatchCriterion& c, const std::string& provenance);

// Two-space indented dump; parsing and re-dumping reproduces it byte for byte.
std::string dump(const Json& j);

// "602 ± 4" style rendering; df none prints without a df marker.
std::string format_series(const ElementSeries& s);

// Specimens as rows, panel elements as columns, mean ± SE cells.
std::string render_dataset_table(const Dataset& d, const std::vector<Element>& elements);

}  // namespace cabl
