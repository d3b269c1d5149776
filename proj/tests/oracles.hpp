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

// Reference computations shared by the unit tests and the acceptance
// runner. Nothing here calls into the library's statistics code.

#include "cabl/evidence.hpp"
#include "cabl/stats/manova.hpp"
#include "test_support.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace cabl::testing {

// Balanced bullets x locations x replicates design with two responses
// (log Ag, log As style). Bullet 2 is shifted on the first response.
inline std::vector<stats::FactorialObservation> seeded_factorial_design(std::uint64_t seed, int bullets = 2,
                                                                        int replicates = 3,
                                                                        double bullet_shift = 0.045) {
    static const char* const kLocations[] = {"outer", "middle", "inner"};
    Rng rng(seed);
    std::vector<stats::FactorialObservation> out;
    for (int b = 0; b < bullets; ++b)
        for (int l = 0; l < 3; ++l)
            for (int r = 0; r < replicates; ++r) {
                const double y1 = 1.85 + b * bullet_shift + 0.01 * l + 0.04 * rng.normal();
                const double y2 = 0.95 - 0.005 * l + 0.05 * rng.normal();
                out.push_back({"B" + std::to_string(b + 1), kLocations[l], {y1, y2}});
            }
    return out;
}

// Wilks' lambda for the three effects of a balanced two-way layout with two
// responses, from the classical sums-of-squares decomposition.
struct BalancedLayout {
    int bullets = 0;
    int locations = 0;
    int replicates = 0;
    // y[(b * locations + l) * replicates + r] = {y1, y2}
    std::vector<std::array<double, 2>> y;
};

inline BalancedLayout to_layout(const std::vector<stats::FactorialObservation>& data, int bullets, int replicates) {
    BalancedLayout lay{bullets, 3, replicates, {}};
    for (const auto& o : data) lay.y.push_back({o.responses[0], o.responses[1]});
    return lay;
}

struct Sscp {
    double a = 0, b = 0, c = 0;   // [[a, b], [b, c]]
    void add(double u, double v, double w = 1) {
        a += w * u * u;
        b += w * u * v;
        c += w * v * v;
    }
    double det() const { return a * c - b * b; }
};

inline std::array<double, 3> balanced_wilks(const BalancedLayout& lay) {
    const int B = lay.bullets, L = lay.locations, R = lay.replicates;
    std::vector<std::array<double, 2>> cell(static_cast<std::size_t>(B * L)), mb(static_cast<std::size_t>(B)),
        ml(static_cast<std::size_t>(L));
    std::array<double, 2> grand{0, 0};
    for (int b = 0; b < B; ++b)
        for (int l = 0; l < L; ++l)
            for (int r = 0; r < R; ++r)
                for (int k = 0; k < 2; ++k) {
                    const double v = lay.y[static_cast<std::size_t>((b * L + l) * R + r)][static_cast<std::size_t>(k)];
                    cell[static_cast<std::size_t>(b * L + l)][static_cast<std::size_t>(k)] += v / R;
                    mb[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] += v / (L * R);
                    ml[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] += v / (B * R);
                    grand[static_cast<std::size_t>(k)] += v / (B * L * R);
                }
    Sscp e, hb, hl, hi;
    for (int b = 0; b < B; ++b)
        for (int l = 0; l < L; ++l) {
            const auto& m = cell[static_cast<std::size_t>(b * L + l)];
            for (int r = 0; r < R; ++r) {
                const auto& v = lay.y[static_cast<std::size_t>((b * L + l) * R + r)];
                e.add(v[0] - m[0], v[1] - m[1]);
            }
            const auto& bb = mb[static_cast<std::size_t>(b)];
            const auto& ll = ml[static_cast<std::size_t>(l)];
            hi.add(m[0] - bb[0] - ll[0] + grand[0], m[1] - bb[1] - ll[1] + grand[1], R);
        }
    for (int b = 0; b < B; ++b)
        hb.add(mb[static_cast<std::size_t>(b)][0] - grand[0], mb[static_cast<std::size_t>(b)][1] - grand[1], L * R);
    for (int l = 0; l < L; ++l)
        hl.add(ml[static_cast<std::size_t>(l)][0] - grand[0], ml[static_cast<std::size_t>(l)][1] - grand[1], B * R);
    const auto lambda = [&](const Sscp& h) {
        const Sscp t{e.a + h.a, e.b + h.b, e.c + h.c};
        return e.det() / t.det();
    };
    return {lambda(hb), lambda(hl), lambda(hi)};
}

// Permutation p-value for the bullet effect: bullet labels are shuffled
// within each location stratum, which keeps the location structure intact.
inline double permutation_p_bullet(const BalancedLayout& lay, int shuffles, std::uint64_t seed) {
    const double observed = balanced_wilks(lay)[0];
    Rng rng(seed);
    BalancedLayout perm = lay;
    const int B = lay.bullets, L = lay.locations, R = lay.replicates;
    std::vector<std::array<double, 2>> stratum(static_cast<std::size_t>(B * R));
    int extreme = 0;
    for (int s = 0; s < shuffles; ++s) {
        for (int l = 0; l < L; ++l) {
            for (int b = 0; b < B; ++b)
                for (int r = 0; r < R; ++r)
                    stratum[static_cast<std::size_t>(b * R + r)] = lay.y[static_cast<std::size_t>((b * L + l) * R + r)];
            for (std::size_t i = stratum.size() - 1; i > 0; --i) {
                const auto j = static_cast<std::size_t>(rng.engine()() % (i + 1));
                std::swap(stratum[i], stratum[j]);
            }
            for (int b = 0; b < B; ++b)
                for (int r = 0; r < R; ++r)
                    perm.y[static_cast<std::size_t>((b * L + l) * R + r)] = stratum[static_cast<std::size_t>(b * R + r)];
        }
        if (balanced_wilks(perm)[0] <= observed * (1 + 1e-12)) ++extreme;
    }
    return static_cast<double>(extreme) / shuffles;
}

// Null distribution of all three lambdas by simulating pure Gaussian noise;
// Wilks' lambda is invariant to the error covariance, so this is exact up
// to Monte Carlo error.
inline std::array<double, 3> monte_carlo_p(const BalancedLayout& lay, int sims, std::uint64_t seed) {
    const auto observed = balanced_wilks(lay);
    Rng rng(seed);
    BalancedLayout sim = lay;
    std::array<int, 3> extreme{0, 0, 0};
    for (int s = 0; s < sims; ++s) {
        for (auto& v : sim.y) v = {rng.normal(), rng.normal()};
        const auto w = balanced_wilks(sim);
        for (std::size_t k = 0; k < 3; ++k)
            if (w[k] <= observed[k]) ++extreme[k];
    }
    return {static_cast<double>(extreme[0]) / sims, static_cast<double>(extreme[1]) / sims,
            static_cast<double>(extreme[2]) / sims};
}

inline std::vector<double> seeded_lognormal(std::uint64_t seed, int n) {
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = std::exp(rng.normal());
    return v;
}

inline std::vector<double> seeded_exponential(std::uint64_t seed, int n, double rate = 1.0) {
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.exponential(rate);
    return v;
}

inline std::vector<double> seeded_normal(std::uint64_t seed, int n, double mean = 0.0, double sd = 1.0) {
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = mean + sd * rng.normal();
    return v;
}

// Gamma(shape k, scale theta) for integer k as a sum of exponentials.
inline std::vector<double> seeded_gamma_int(std::uint64_t seed, int n, int k, double theta) {
    Rng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) {
        x = 0;
        for (int i = 0; i < k; ++i) x += rng.exponential(1.0 / theta);
    }
    return v;
}

// Enumerates every draws-subset of the labelled cartridges.
inline Rational brute_span(const std::vector<int>& sizes, int draws, int min_groups) {
    std::vector<int> label;
    for (std::size_t g = 0; g < sizes.size(); ++g)
        for (int i = 0; i < sizes[g]; ++i) label.push_back(static_cast<int>(g));
    const int n = static_cast<int>(label.size());
    long hits = 0, total = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != draws) continue;
        ++total;
        std::set<int> seen;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) seen.insert(label[static_cast<std::size_t>(i)]);
        if (static_cast<int>(seen.size()) >= min_groups) ++hits;
    }
    return Rational(hits, total);
}

// All compositions of `total` into positive parts, in nonincreasing order.
inline void partitions(int total, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(total, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(total - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace cabl::testing
