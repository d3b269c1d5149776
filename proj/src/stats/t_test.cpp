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

#include "cabl/stats/t_test.hpp"

#include "cabl/errors.hpp"
#include "cabl/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cabl::stats {

double TwoSampleInput::sd() const {
    return se * std::sqrt(static_cast<double>(n));
}

TwoSampleInput TwoSampleInput::from_values(std::span<const double> values, std::string label) {
    const auto n = values.size();
    if (n < 2) throw DomainError("a t-test sample needs at least 2 values");
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : values) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return TwoSampleInput{mean, sd / std::sqrt(static_cast<double>(n)), static_cast<int>(n),
                          std::move(label)};
}

TTestResult pooled_t_test(const TwoSampleInput& a, const TwoSampleInput& b) {
    if (a.n < 2 || b.n < 2) throw DomainError("pooled t-test needs n >= 2 in each sample");
    if (!(a.se >= 0.0) || !(b.se >= 0.0)) throw DomainError("standard errors must be nonnegative");
    TTestResult r;
    r.df = a.n + b.n - 2;
    if (r.df <= 0) throw DomainError("pooled t-test has no degrees of freedom");
    const double va = a.sd() * a.sd();
    const double vb = b.sd() * b.sd();
    const double pooled = ((a.n - 1) * va + (b.n - 1) * vb) / r.df;
    const double se = std::sqrt(pooled * (1.0 / a.n + 1.0 / b.n));
    const double diff = b.mean - a.mean;
    if (se == 0.0) {
        r.t = diff == 0.0 ? 0.0 : std::copysign(HUGE_VAL, diff);
        r.p_two_sided = diff == 0.0 ? 1.0 : 0.0;
        return r;
    }
    r.t = diff / se;
    r.p_two_sided = std::min(1.0, 2.0 * student_t_sf(std::abs(r.t), r.df));
    return r;
}

}  // namespace cabl::stats
