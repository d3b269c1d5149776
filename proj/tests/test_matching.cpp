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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cabl/errors.hpp"
#include "cabl/ingest.hpp"
#include "cabl/matching.hpp"
#include "cabl/uncertainty.hpp"
#include "test_support.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>

using namespace cabl;

namespace {

ElementSeries sb(double v, double s) { return ElementSeries::poisson_single(Element::Sb, v, s); }
ElementSeries ag(double v, double s) { return ElementSeries::poisson_single(Element::Ag, v, s); }

// Brute-force oracle for biased matching: scan the correction ranges on a
// fine grid and return the smallest gap between the scaled intervals
// (<= 0 means they meet at that grid point).
double grid_min_gap(const ElementSeries& a, const ElementSeries& b, double k, const BiasCorrection* ba,
                    const BiasCorrection* bb) {
    const int steps = 200;
    const auto at = [&](const BiasCorrection* c, int i) {
        return c ? c->c_lo + (c->c_hi - c->c_lo) * i / steps : 0.0;
    };
    double best = HUGE_VAL;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j) {
            const double ca = at(ba, i);
            const double cb = at(bb, j);
            const double alo = (a.mean - k * a.se) * (1 + ca), ahi = (a.mean + k * a.se) * (1 + ca);
            const double blo = (b.mean - k * b.se) * (1 + cb), bhi = (b.mean + k * b.se) * (1 + cb);
            best = std::min(best, std::max(alo, blo) - std::min(ahi, bhi));
        }
    return best;
}

}  // namespace

TEST_CASE("touching antimony intervals") {
    const auto ce567 = sb(602, 4);
    const auto ce840 = ElementSeries::replicate(Element::Sb, 642, 6, 3);
    const auto closed = compare_element(ce567, ce840, 4, Boundary::closed);
    CHECK(closed.matched);
    CHECK(closed.touching);
    REQUIRE(closed.overlap);
    CHECK(closed.overlap->lo == 618);
    CHECK(closed.overlap->hi == 618);
    CHECK_FALSE(match_element(ce567, ce840, 4, Boundary::open));
    CHECK(match_element(ce840, ce567, 4, Boundary::closed));
}

TEST_CASE("decimal touch survives rounding") {
    // Endpoints meet in decimal arithmetic (9.1) but not in binary.
    const auto a = ag(7.9, 0.3);
    const auto b = ag(10.3, 0.3);
    CHECK(7.9 + 4 * 0.3 < 10.3 - 4 * 0.3);
    CHECK(match_element(a, b, 4, Boundary::closed));
    CHECK_FALSE(match_element(a, b, 4, Boundary::open));
    CHECK(compare_element(a, b, 4, Boundary::closed).touching);
}

TEST_CASE("table1 fixture examples") {
    const auto t1 = fixture(FixtureName::table1);
    const auto g4 = MatchCriterion::guinn4();
    CHECK_FALSE(match_element(t1.at("CE 842").at(Element::Sb), t1.at("CE 840").at(Element::Sb), 4));
    CHECK(match_specimens(t1.at("CE 399"), t1.at("CE 842"), g4).matched);
    const auto r = match_specimens(t1.at("CE 399"), t1.at("CE 567"), g4);
    CHECK_FALSE(r.matched);
    CHECK_FALSE(r.per_element.at(Element::Sb).matched);
    CHECK_FALSE(r.per_element.at(Element::Sb).overlap);
    for (const auto& s : t1.specimens) CHECK(match_specimens(s, s, g4).matched);
}

TEST_CASE("element mismatch and incomplete panels") {
    CHECK_THROWS_AS(match_element(sb(1, 1), ag(1, 1), 4), DomainError);
    CHECK_THROWS_AS(match_element(sb(1, 1), sb(1, 1), 0), DomainError);
    Specimen a{"A", SpecimenKind::fragment, std::nullopt, Location::unlabeled, {}};
    a.series.emplace(Element::Sb, sb(600, 5));
    Specimen b = a;
    b.id = "B";
    CHECK_THROWS_AS(match_specimens(a, b, MatchCriterion::guinn4()), IncompletePanelError);
}

TEST_CASE("bias-corrected matches") {
    const auto t1 = fixture(FixtureName::table1);
    const auto t2 = fixture(FixtureName::table2);
    const auto bias = default_bias_table();
    const auto& ce567 = t1.at("CE 567");
    const auto& whole = t2.at("6003/1 whole");
    CHECK(match_element_biased(whole.at(Element::Sb), ce567.at(Element::Sb), 2, &bias.at(Element::Sb), nullptr));
    CHECK_FALSE(match_element(whole.at(Element::Sb), ce567.at(Element::Sb), 2));
    CHECK_FALSE(
        match_element_biased(whole.at(Element::Ag), ce567.at(Element::Ag), 2, &bias.at(Element::Ag), nullptr));
    for (const char* id : {"6003/1 outer", "6003/1 middle", "6003/1 inner"})
        CHECK(match_element_biased(t2.at(id).at(Element::Ag), ce567.at(Element::Ag), 2, &bias.at(Element::Ag),
                                   nullptr));
    const auto m = compare_element(t2.at("6003/1 middle").at(Element::Ag), ce567.at(Element::Ag), 2,
                                   Boundary::closed, &bias.at(Element::Ag), nullptr);
    REQUIRE(m.bias_used);
    CHECK(m.bias_used->first == doctest::Approx(0.055));
    REQUIRE(m.overlap);
    CHECK(m.overlap->lo == doctest::Approx(6.9208));
    CHECK(m.overlap->hi == doctest::Approx(7.1318));

    const auto nrc = match_specimens(whole, ce567, MatchCriterion::nrc2());
    CHECK(nrc.per_element.at(Element::Sb).matched);
    CHECK_FALSE(nrc.per_element.at(Element::Ag).matched);
    CHECK_FALSE(nrc.matched);
}

TEST_CASE("property: symmetry, reflexivity, monotonicity") {
    testing::Rng rng(1234);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto a = sb(rng.uniform(1, 100), rng.uniform(0, 5));
        const auto b = sb(rng.uniform(1, 100), rng.uniform(0, 5));
        const double k = rng.uniform(0.1, 6);
        for (auto bd : {Boundary::closed, Boundary::open}) {
            CHECK(match_element(a, b, k, bd) == match_element(b, a, k, bd));
            if (a.se > 0 || bd == Boundary::closed) CHECK(match_element(a, a, k, bd));
        }
        if (match_element(a, b, k)) CHECK(match_element(a, b, k + rng.uniform(0, 3)));
        // Zero bias is no bias.
        const auto zero = BiasCorrection::make(Element::Sb, 0, 0);
        CHECK(match_element_biased(a, b, k, &zero, &zero) == match_element(a, b, k));
        CHECK(match_element_biased(a, b, k, nullptr, nullptr) == match_element(a, b, k));
    }
}

TEST_CASE("property: endpoint hull agrees with a grid search over the corrections") {
    testing::Rng rng(99);
    int positives = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto a = sb(rng.uniform(50, 100), rng.uniform(0.1, 3));
        const auto b = sb(rng.uniform(50, 100), rng.uniform(0.1, 3));
        const double lo = rng.uniform(-0.2, 0.2);
        const auto ba = BiasCorrection::make(Element::Sb, lo, lo + rng.uniform(0, 0.2));
        const bool with_b = rng.uniform() < 0.5;
        const double lo2 = rng.uniform(-0.2, 0.2);
        const auto bb = BiasCorrection::make(Element::Sb, lo2, lo2 + rng.uniform(0, 0.2));
        const double k = rng.uniform(0.5, 4);
        const bool fast = match_element_biased(a, b, k, &ba, with_b ? &bb : nullptr);
        const double gap = grid_min_gap(a, b, k, &ba, with_b ? &bb : nullptr);
        // The grid can only miss a match by less than one step of the scan.
        if (gap <= 0) CHECK(fast);
        if (fast) CHECK(gap < 0.25);
        positives += fast;
    }
    CHECK(positives > 50);
}

TEST_CASE("property: shrinking the panel never breaks a match") {
    testing::Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Specimen a{"A", SpecimenKind::fragment, std::nullopt, Location::unlabeled, {}};
        Specimen b = a;
        b.id = "B";
        for (Element e : kPanelElements) {
            a.series.emplace(e, ElementSeries::poisson_single(e, rng.uniform(10, 20), rng.uniform(0.1, 2)));
            b.series.emplace(e, ElementSeries::poisson_single(e, rng.uniform(10, 20), rng.uniform(0.1, 2)));
        }
        MatchCriterion full = MatchCriterion::guinn4();
        full.elements.assign(kPanelElements.begin(), kPanelElements.end());
        const bool m = match_specimens(a, b, full).matched;
        MatchCriterion small = full;
        small.elements.resize(static_cast<std::size_t>(rng.integer(1, 6)));
        if (m) CHECK(match_specimens(a, b, small).matched);
    }
}

TEST_CASE("equivalence test against boost's t distribution") {
    const auto a = ElementSeries::replicate(Element::Sb, 576, 3.47, 18);
    const auto b = ElementSeries::replicate(Element::Sb, 581, 7.56, 4);
    const auto r = equivalence_t_test(a, b, 30);
    const double se = std::hypot(3.47, 7.56);
    boost::math::students_t dist(20);
    const double p_lo = boost::math::cdf(boost::math::complement(dist, (-5 + 30) / se));
    const double p_hi = boost::math::cdf(boost::math::complement(dist, (30 + 5) / se));
    CHECK(r.df == 20);
    CHECK(r.se == doctest::Approx(se));
    CHECK(r.p == doctest::Approx(std::max(p_lo, p_hi)).epsilon(1e-9));
    CHECK(r.equivalent);

    const auto far = equivalence_t_test(ElementSeries::replicate(Element::Sb, 100, 1, 4),
                                        ElementSeries::replicate(Element::Sb, 200, 1, 4), 10);
    CHECK_FALSE(far.equivalent);
    CHECK(far.p > 0.999);

    const auto same = ElementSeries::replicate(Element::Sb, 100, 0.5, 6);
    CHECK(equivalence_t_test(same, same, 5).equivalent);

    CHECK_THROWS_AS(equivalence_t_test(sb(1, 1), same, 5), NoDegreesOfFreedomError);
    CHECK_THROWS_AS(equivalence_t_test(same, same, 0), DomainError);
}
