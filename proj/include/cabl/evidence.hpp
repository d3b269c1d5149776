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

// Bayesian evidence for the number of bullets behind a set of fragments:
// how likely is it that m bullets drawn from a box of compositional groups
// span at least g distinct groups, the likelihood ratio between two bullet
// counts, and posterior odds.
//
// No measurement error and no heterogeneity: a bullet's group is known.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cabl {

using Rational = boost::multiprecision::cpp_rational;

// Boxes up to this many cartridges are evaluated in exact rational arithmetic.
inline constexpr int kExactBoxLimit = 64;
// Inclusion-exclusion visits every subset of groups.
inline constexpr int kMaxGroups = 20;

class BoxModel {
public:
    // Throws DomainError unless there is at least one group and every size > 0.
    explicit BoxModel(std::vector<int> group_sizes);

    // Comma list, e.g. "6,4".
    static BoxModel parse(std::string_view list);

    const std::vector<int>& group_sizes() const noexcept { return sizes_; }
    int total() const noexcept { return total_; }
    int group_count() const noexcept { return static_cast<int>(sizes_.size()); }

private:
    std::vector<int> sizes_;
    int total_ = 0;
};

// Probability that a uniformly random `draws`-subset of the box contains
// members of at least `min_groups` distinct groups, by inclusion-exclusion
// over subsets of groups. Exact for any box size.
Rational p_span_at_least_exact(const BoxModel& box, int draws, int min_groups);

// Exact (then rounded) for boxes of at most kExactBoxLimit cartridges,
// log-space floating point beyond.
double p_span_at_least(const BoxModel& box, int draws, int min_groups);

struct EvidenceResult {
    double p_given_T = 0.0;
    double p_given_notT = 0.0;
    double likelihood_ratio = 0.0;
    std::optional<double> posterior_odds;
    // "24/45" style renderings when the exact path was used.
    std::optional<std::string> p_given_T_exact;
    std::optional<std::string> p_given_notT_exact;
    std::optional<std::string> likelihood_ratio_exact;
};

// p_given_T = p_span_at_least(box, draws_T, observed_groups) and likewise for
// the alternative. Throws UndefinedRatioError when p_given_notT is zero.
EvidenceResult likelihood_ratio(const BoxModel& box, int observed_groups, int draws_T, int draws_notT);

// lr * prior_odds; both must be positive.
double posterior_odds(double lr, double prior_odds);

EvidenceResult with_prior(EvidenceResult r, double prior_odds);

}  // namespace cabl
