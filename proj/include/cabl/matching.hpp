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

// Interval-overlap match criteria, per element and over an element panel,
// with optional bias-range correction and a TOST equivalence test.

#include "cabl/core_model.hpp"

#include <map>
#include <optional>
#include <utility>

namespace cabl {

// Relative tolerance under which two interval endpoints are treated as the
// same number. Decimal inputs such as 8.1 +/- 0.6 are not exact in binary;
// without this an exact touch could flip to a gap through rounding.
inline constexpr double kTouchTolerance = 1e-12;

struct ElementMatch {
    bool matched = false;
    std::optional<Interval> overlap;             // empty when disjoint
    std::optional<std::pair<double, double>> bias_used;   // range applied to the first series
    bool touching = false;                       // decision rests on an exact touch

    friend bool operator==(const ElementMatch&, const ElementMatch&) = default;
};

struct MatchResult {
    bool matched = false;
    std::map<Element, ElementMatch> per_element;
    MatchCriterion criterion;
};

// Detailed comparison of the (possibly bias-widened) intervals of a and b.
// bias ranges may be null. Throws DomainError on element mismatch or k <= 0.
ElementMatch compare_element(const ElementSeries& a, const ElementSeries& b, double k,
                             Boundary boundary, const BiasCorrection* bias_a = nullptr,
                             const BiasCorrection* bias_b = nullptr);

bool match_element(const ElementSeries& a, const ElementSeries& b, double k,
                   Boundary boundary = Boundary::closed);

// True iff some corrections c_a, c_b in the given ranges (0 when absent)
// make the scaled intervals meet. Interval endpoints are linear in c, so the
// union over a range is the hull of the two endpoint intervals.
bool match_element_biased(const ElementSeries& a, const ElementSeries& b, double k,
                          const BiasCorrection* bias_a, const BiasCorrection* bias_b,
                          Boundary boundary = Boundary::closed);

// Criterion bias entries are applied to `a` only. Throws IncompletePanelError
// when either specimen lacks a panel element.
MatchResult match_specimens(const Specimen& a, const Specimen& b, const MatchCriterion& criterion);

struct EquivalenceResult {
    double diff = 0.0;       // mean_a - mean_b
    double se = 0.0;         // sqrt(se_a^2 + se_b^2)
    int df = 0;              // df_a + df_b
    double t_lower = 0.0;    // (diff + margin) / se
    double t_upper = 0.0;    // (margin - diff) / se
    double p = 1.0;          // max of the two one-sided p-values
    bool equivalent = false; // p <= alpha
};

// Two one-sided tests of |mean_a - mean_b| < margin at alpha = 0.05.
// Both series need replicate df; throws NoDegreesOfFreedomError otherwise.
EquivalenceResult equivalence_t_test(const ElementSeries& a, const ElementSeries& b, double margin,
                                     double alpha = 0.05);

}  // namespace cabl
