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

#include "cabl/core_model.hpp"

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace cabl {

struct Dataset {
    std::vector<Specimen> specimens;
    std::string provenance;

    bool empty() const noexcept { return specimens.empty(); }
    const Specimen* find(std::string_view id) const;
    // Throws DomainError for an unknown id.
    const Specimen& at(std::string_view id) const;
    Dataset subset(const std::function<bool(const Specimen&)>& keep) const;

    // Specimen ids are compared; provenance is a label only.
    friend bool operator==(const Dataset& a, const Dataset& b) { return a.specimens == b.specimens; }
};

// Header: specimen_id,kind,lot,location,element,value_ppm,sigma_ppm,basis
// with an optional trailing `n` column used by `summary` rows.
//
// poisson_single rows become one-observation series (df none) with sigma as
// the SE. replicate_member rows sharing (specimen, element, location) are
// reduced with replicate_summary. summary rows carry mean, SE and n directly.
Dataset parse_csv(std::istream& in, std::string provenance = "<stream>");
Dataset parse_csv_text(std::string_view text, std::string provenance = "<text>");
Dataset load_csv_file(const std::string& path);

// Writes every series as a summary or poisson_single row so that
// parse_csv(render_csv(d)) == d.
std::string render_csv(const Dataset& d);

enum class FixtureName { table1, table2, table3 };

FixtureName parse_fixture_name(std::string_view name);
std::string_view to_string(FixtureName name);

// Embedded reference datasets.
//
// table1: five evidence specimens, Ag and Sb. CE 840 is the mean of
//         three replicates; the rest are single Poisson-counted observations.
// table2: bullet 1 of lot 6003 by radial location plus all measurements,
//         values read as mean +/- standard error with the printed df.
// table3: bullets 1, 8, 9, 10 of lot 6003 by location and whole bullet,
//         +/- values stored verbatim with the printed N. These do not agree
//         with table2 for the same fragments and behave like standard
//         deviations; analyses that need SEs use table2.
Dataset fixture(FixtureName name);

}  // namespace cabl
