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

#include <span>
#include <string>

namespace cabl::stats {

// One sample of a two-sample comparison, given as a summary.
struct TwoSampleInput {
    double mean = 0.0;
    double se = 0.0;   // standard error of the mean; sd = se * sqrt(n)
    int n = 0;
    std::string label;

    double sd() const;

    static TwoSampleInput from_values(std::span<const double> values, std::string label = {});
};

struct TTestResult {
    double t = 0.0;        // (mean_b - mean_a) / se_pooled
    int df = 0;            // n_a + n_b - 2
    double p_two_sided = 1.0;
};

// Classic pooled-variance (Fisher's LSD for two groups) t-test.
// Throws DomainError when n < 2 on either side.
TTestResult pooled_t_test(const TwoSampleInput& a, const TwoSampleInput& b);

}  // namespace cabl::stats
