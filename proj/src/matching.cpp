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

#include "cabl/matching.hpp"

#include "cabl/errors.hpp"
#include "cabl/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace cabl {

namespace {

Interval widened(const ElementSeries& s, double k, const BiasCorrection* bias) {
    const Interval base = series_interval(s, k);
    if (bias == nullptr) return base;
    const double f_lo = 1.0 + bias->c_lo;
    const double f_hi = 1.0 + bias->c_hi;
    return Interval{std::min(f_lo * base.lo, f_hi * base.lo), std::max(f_lo * base.hi, f_hi * base.hi)};
}

}  // namespace

ElementMatch compare_element(const ElementSeries& a, const ElementSeries& b, double k,
                             Boundary boundary, const BiasCorrection* bias_a,
                             const BiasCorrection* bias_b) {
    if (a.element != b.element)
        throw DomainError("cannot compare " + std::string(to_string(a.element)) + " with " +
                          std::string(to_string(b.element)));
    if (!(k > 0.0)) throw DomainError("interval multiplier k must be positive");
    for (const auto* bias : {bias_a, bias_b}) {
        if (bias && bias->element != a.element)
            throw DomainError("bias correction for " + std::string(to_string(bias->element)) +
                              " applied to " + std::string(to_string(a.element)));
    }

    const Interval ia = widened(a, k, bias_a);
    const Interval ib = widened(b, k, bias_b);
    const double lo = std::max(ia.lo, ib.lo);
    const double hi = std::min(ia.hi, ib.hi);
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    const bool touching = std::abs(lo - hi) <= kTouchTolerance * scale;

    ElementMatch m;
    m.touching = touching;
    if (bias_a) m.bias_used = std::make_pair(bias_a->c_lo, bias_a->c_hi);
    if (touching) {
        m.matched = boundary == Boundary::closed;
        if (m.matched) m.overlap = Interval{lo, lo};
    } else {
        m.matched = lo < hi;
        if (m.matched) m.overlap = Interval{lo, hi};
    }
    return m;
}

bool match_element(const ElementSeries& a, const ElementSeries& b, double k, Boundary boundary) {
    return compare_element(a, b, k, boundary).matched;
}

bool match_element_biased(const ElementSeries& a, const ElementSeries& b, double k,
                          const BiasCorrection* bias_a, const BiasCorrection* bias_b,
                          Boundary boundary) {
    return compare_element(a, b, k, boundary, bias_a, bias_b).matched;
}

MatchResult match_specimens(const Specimen& a, const Specimen& b, const MatchCriterion& criterion) {
    criterion.validate();
    MatchResult r;
    r.criterion = criterion;
    r.matched = true;
    for (Element e : criterion.elements) {
        const ElementSeries& sa = a.at(e);
        const ElementSeries& sb = b.at(e);
        const auto bias = criterion.bias.find(e);
        const BiasCorrection* ba = bias == criterion.bias.end() ? nullptr : &bias->second;
        ElementMatch m = compare_element(sa, sb, criterion.k, criterion.boundary, ba, nullptr);
        r.matched = r.matched && m.matched;
        r.per_element.emplace(e, std::move(m));
    }
    return r;
}

EquivalenceResult equivalence_t_test(const ElementSeries& a, const ElementSeries& b, double margin,
                                     double alpha) {
    if (a.element != b.element) throw DomainError("equivalence test across different elements");
    if (!a.has_df() || !b.has_df())
        throw NoDegreesOfFreedomError(
            "equivalence t-test needs replicate-based series; a single Poisson-counted "
            "observation has no degrees of freedom");
    if (!(margin > 0.0)) throw DomainError("equivalence margin must be positive");

    EquivalenceResult r;
    r.diff = a.mean - b.mean;
    r.se = std::hypot(a.se, b.se);
    r.df = *a.df + *b.df;
    if (r.df <= 0) throw DomainError("equivalence t-test needs positive degrees of freedom");
    if (r.se == 0.0) {
        // Exact means: equivalence is decided by the margin alone.
        r.t_lower = r.t_upper = std::abs(r.diff) < margin ? HUGE_VAL : -HUGE_VAL;
        r.p = std::abs(r.diff) < margin ? 0.0 : 1.0;
    } else {
        r.t_lower = (r.diff + margin) / r.se;
        r.t_upper = (margin - r.diff) / r.se;
        const double p_lower = stats::student_t_sf(r.t_lower, r.df);
        const double p_upper = stats::student_t_sf(r.t_upper, r.df);
        r.p = std::max(p_lower, p_upper);
    }
    r.equivalent = r.p <= alpha;
    return r;
}

}  // namespace cabl
