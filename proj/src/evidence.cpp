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

#include "cabl/evidence.hpp"

#include "cabl/errors.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace cabl {

using boost::multiprecision::cpp_int;

BoxModel::BoxModel(std::vector<int> group_sizes) : sizes_(std::move(group_sizes)) {
    if (sizes_.empty()) throw DomainError("box model needs at least one group");
    for (int s : sizes_) {
        if (s <= 0) throw DomainError("box group sizes must be positive");
        total_ += s;
    }
    if (group_count() > kMaxGroups)
        throw DomainError("box model supports at most " + std::to_string(kMaxGroups) + " groups");
}

BoxModel BoxModel::parse(std::string_view list) {
    std::vector<int> sizes;
    std::size_t start = 0;
    while (true) {
        const auto comma = list.find(',', start);
        auto token = list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - start);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
            throw DomainError("box group sizes must be integers, got '" + std::string(token) + "'");
        sizes.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return BoxModel(std::move(sizes));
}

namespace {

cpp_int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    cpp_int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -HUGE_VAL;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_args(const BoxModel& box, int draws, int min_groups) {
    if (draws < 1 || draws > box.total())
        throw DomainError("draws must be between 1 and the box total (" + std::to_string(box.total()) +
                          "), got " + std::to_string(draws));
    // More groups than the box holds is allowed and has probability 0.
    if (min_groups < 1) throw DomainError("min_groups must be at least 1, got " + std::to_string(min_groups));
}

// Visits every subset T of groups with (|T|, size of union).
template <class F>
void for_each_group_subset(const BoxModel& box, F&& f) {
    const int g = box.group_count();
    const auto& sizes = box.group_sizes();
    for (unsigned mask = 0; mask < (1u << g); ++mask) {
        int members = 0;
        int count = 0;
        for (int i = 0; i < g; ++i) {
            if (mask & (1u << i)) {
                members += sizes[static_cast<std::size_t>(i)];
                ++count;
            }
        }
        f(count, members);
    }
}

// Number of draws-subsets touching exactly h groups, summed over h >= min_groups:
//   E_h = sum_T (-1)^(h-|T|) C(G-|T|, h-|T|) C(|union T|, draws)
cpp_int count_spanning(const BoxModel& box, int draws, int min_groups) {
    const int G = box.group_count();
    cpp_int total = 0;
    for_each_group_subset(box, [&](int t, int members) {
        const cpp_int ways = binomial(members, draws);
        if (ways == 0) return;
        cpp_int coeff = 0;
        for (int h = std::max(min_groups, t); h <= G; ++h) {
            const cpp_int c = binomial(G - t, h - t);
            coeff += ((h - t) % 2 == 0) ? c : cpp_int(-c);
        }
        total += coeff * ways;
    });
    return total;
}

double p_span_log_space(const BoxModel& box, int draws, int min_groups) {
    const int G = box.group_count();
    const double log_all = log_binomial(box.total(), draws);
    long double sum = 0.0L;
    for_each_group_subset(box, [&](int t, int members) {
        if (members < draws) return;
        long double coeff = 0.0L;
        for (int h = std::max(min_groups, t); h <= G; ++h) {
            const long double c = std::exp(static_cast<long double>(log_binomial(G - t, h - t)));
            coeff += ((h - t) % 2 == 0) ? c : -c;
        }
        sum += coeff * std::exp(static_cast<long double>(log_binomial(members, draws) - log_all));
    });
    return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

std::string render(const Rational& q) {
    std::string s = boost::multiprecision::numerator(q).str();
    const cpp_int den = boost::multiprecision::denominator(q);
    if (den != 1) s += "/" + den.str();
    return s;
}

}  // namespace

Rational p_span_at_least_exact(const BoxModel& box, int draws, int min_groups) {
    check_args(box, draws, min_groups);
    return Rational(count_spanning(box, draws, min_groups), binomial(box.total(), draws));
}

double p_span_at_least(const BoxModel& box, int draws, int min_groups) {
    check_args(box, draws, min_groups);
    if (box.total() <= kExactBoxLimit)
        return static_cast<double>(p_span_at_least_exact(box, draws, min_groups));
    return p_span_log_space(box, draws, min_groups);
}

EvidenceResult likelihood_ratio(const BoxModel& box, int observed_groups, int draws_T, int draws_notT) {
    EvidenceResult r;
    if (box.total() <= kExactBoxLimit) {
        const Rational pt = p_span_at_least_exact(box, draws_T, observed_groups);
        const Rational pn = p_span_at_least_exact(box, draws_notT, observed_groups);
        if (pn == 0)
            throw UndefinedRatioError("Pr(E | alternative) is zero; the likelihood ratio is undefined");
        const Rational lr = pt / pn;
        r.p_given_T = static_cast<double>(pt);
        r.p_given_notT = static_cast<double>(pn);
        r.likelihood_ratio = static_cast<double>(lr);
        r.p_given_T_exact = render(pt);
        r.p_given_notT_exact = render(pn);
        r.likelihood_ratio_exact = render(lr);
    } else {
        r.p_given_T = p_span_at_least(box, draws_T, observed_groups);
        r.p_given_notT = p_span_at_least(box, draws_notT, observed_groups);
        if (r.p_given_notT == 0.0)
            throw UndefinedRatioError("Pr(E | alternative) is zero; the likelihood ratio is undefined");
        r.likelihood_ratio = r.p_given_T / r.p_given_notT;
    }
    return r;
}

double posterior_odds(double lr, double prior_odds) {
    if (!(lr > 0.0) || !std::isfinite(lr)) throw DomainError("likelihood ratio must be positive");
    if (!(prior_odds > 0.0) || !std::isfinite(prior_odds)) throw DomainError("prior odds must be positive");
    return lr * prior_odds;
}

EvidenceResult with_prior(EvidenceResult r, double prior_odds) {
    r.posterior_odds = posterior_odds(r.likelihood_ratio, prior_odds);
    return r;
}

}  // namespace cabl
