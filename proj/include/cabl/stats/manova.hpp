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

// Two-way fixed-effects MANOVA with interaction (factors "bullet" and
// "location"), reporting Wilks' lambda and the Hotelling-Lawley trace.

#include <span>
#include <string>
#include <vector>

namespace cabl::stats {

struct FactorialObservation {
    std::string bullet;
    std::string location;
    std::vector<double> responses;
};

struct EffectTest {
    std::string effect;
    int df_hypothesis = 0;

    double wilks_lambda = 1.0;
    double wilks_f = 0.0;      // Rao's F approximation (exact when min(p, q) <= 2)
    double wilks_df1 = 0.0;
    double wilks_df2 = 0.0;
    double wilks_p = 1.0;

    double hotelling_lawley = 0.0;
    double hl_f = 0.0;
    double hl_df1 = 0.0;
    double hl_df2 = 0.0;
    double hl_p = 1.0;
};

struct ManovaResult {
    int responses = 0;
    int observations = 0;
    int error_df = 0;
    std::vector<std::string> bullet_levels;
    std::vector<std::string> location_levels;
    EffectTest bullet;
    EffectTest location;
    EffectTest interaction;
};

// Hypothesis SSCP matrices are type III (effect coding, full-versus-reduced
// model), which coincides with the classical decomposition for balanced data.
//
// Throws DesignError for fewer than two levels of a factor, an empty cell, a
// cell with fewer than two replicates, or ragged response vectors. Throws
// RankError when the within-cell SSCP matrix is singular. A data set with no
// variation at all yields lambda = 1 and p = 1 for every effect.
ManovaResult manova_two_way(std::span<const FactorialObservation> data);

// Natural log of every response. Throws DomainError on nonpositive values.
std::vector<FactorialObservation> log_responses(std::span<const FactorialObservation> data);

}  // namespace cabl::stats
