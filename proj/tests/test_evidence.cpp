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
#include "cabl/evidence.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace cabl;

TEST_CASE("box (6,4)") {
    const BoxModel box({6, 4});
    CHECK(p_span_at_least_exact(box, 2, 2) == Rational(24, 45));
    CHECK(p_span_at_least_exact(box, 3, 2) == Rational(4, 5));
    const auto r = likelihood_ratio(box, 2, 2, 3);
    CHECK(r.likelihood_ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.likelihood_ratio < 1.0);
    REQUIRE(r.likelihood_ratio_exact);
    CHECK(*r.likelihood_ratio_exact == "2/3");
    CHECK(*r.p_given_T_exact == "8/15");
}

TEST_CASE("six and four box worked numbers") {
    CHECK(p_span_at_least_exact(BoxModel({3, 3, 3}), 3, 3) == Rational(27, 84));
    CHECK(likelihood_ratio(BoxModel({5, 5}), 2, 2, 3).likelihood_ratio == doctest::Approx(2.0 / 3.0));
    CHECK(likelihood_ratio(BoxModel({10}), 1, 4, 7).likelihood_ratio == 1.0);
    CHECK(p_span_at_least(BoxModel({6, 4}), 1, 2) == 0.0);
    CHECK(posterior_odds(2.0 / 3.0, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(posterior_odds(1, 0.25) == 0.25);
    CHECK(posterior_odds(2.0 / 3.0, 3) == doctest::Approx(2.0));
    const auto with = with_prior(likelihood_ratio(BoxModel({6, 4}), 2, 2, 3), 3);
    REQUIRE(with.posterior_odds);
    CHECK(*with.posterior_odds == doctest::Approx(2.0));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(BoxModel({}), DomainError);
    CHECK_THROWS_AS(BoxModel({3, 0}), DomainError);
    CHECK_THROWS_AS(BoxModel::parse("6,x"), DomainError);
    CHECK_THROWS_AS(p_span_at_least(BoxModel({6, 4}), 11, 2), DomainError);
    CHECK_THROWS_AS(likelihood_ratio(BoxModel({6, 4}), 2, 2, 1), UndefinedRatioError);
    CHECK_THROWS_AS(posterior_odds(1, 0), DomainError);
    CHECK_THROWS_AS(BoxModel(std::vector<int>(21, 1)), DomainError);
    CHECK(BoxModel::parse(" 6, 4 ").group_sizes() == std::vector<int>{6, 4});
}

TEST_CASE("inclusion-exclusion equals enumeration for every box up to 12") {
    int boxes = 0;
    for (int total = 1; total <= 12; ++total) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        testing::partitions(total, total, cur, parts);
        for (const auto& sizes : parts) {
            ++boxes;
            const BoxModel box(sizes);
            for (int m = 1; m <= total; ++m)
                for (int g = 1; g <= static_cast<int>(sizes.size()) + 1; ++g) {
                    const Rational exact = p_span_at_least_exact(box, m, g);
                    const Rational brute = testing::brute_span(sizes, m, g);
                    CHECK(exact == brute);
                    CHECK(p_span_at_least(box, m, g) == doctest::Approx(brute.convert_to<double>()).epsilon(1e-14));
                }
        }
    }
    CHECK(boxes == 271);   // partitions of 1..12
}

TEST_CASE("property: monotone in draws and groups") {
    testing::Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> sizes(static_cast<std::size_t>(rng.integer(1, 6)));
        for (auto& s : sizes) s = rng.integer(1, 12);
        const BoxModel box(sizes);
        for (int m = 1; m <= box.total(); ++m) {
            CHECK(p_span_at_least_exact(box, m, 1) == 1);
            for (int g = 1; g <= box.group_count(); ++g) {
                const Rational p = p_span_at_least_exact(box, m, g);
                if (m < box.total()) CHECK(p_span_at_least_exact(box, m + 1, g) >= p);
                CHECK(p_span_at_least_exact(box, m, g + 1) <= p);
            }
        }
    }
}

TEST_CASE("log-space path agrees with exact arithmetic on large boxes") {
    const BoxModel big({30, 25, 20, 15});
    REQUIRE(big.total() > kExactBoxLimit);
    for (int m : {2, 3, 5, 10, 40, 89})
        for (int g = 1; g <= 4; ++g) {
            const double exact = p_span_at_least_exact(big, m, g).convert_to<double>();
            CHECK(p_span_at_least(big, m, g) == doctest::Approx(exact).epsilon(1e-9));
        }
}
