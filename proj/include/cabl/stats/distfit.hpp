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

// Maximum-likelihood fitting of candidate distribution families, chi-squared
// goodness of fit on equal-probability bins, and ranking by p-value.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cabl::stats {

enum class Family { exponential, weibull, gamma, lognormal, gumbel, triangular, chi_squared, normal };

inline constexpr Family kAllFamilies[] = {
    Family::exponential, Family::weibull, Family::gamma,       Family::lognormal,
    Family::gumbel,      Family::triangular, Family::chi_squared, Family::normal};

std::string_view to_string(Family f);
Family parse_family(std::string_view name);
// "all" or a comma list of family names.
std::vector<Family> parse_family_list(std::string_view list);

struct FittedDistribution {
    Family family = Family::normal;
    // exponential: rate | weibull: shape, scale | gamma: shape, scale
    // lognormal: log_mean, log_sd | gumbel: location, scale (maximum form)
    // triangular: min, mode, max | chi_squared: k | normal: mean, sd
    std::vector<double> params;

    std::vector<std::string_view> param_names() const;
    int param_count() const { return static_cast<int>(params.size()); }
    double cdf(double x) const;
};

// Closed forms for exponential, lognormal and normal; one-dimensional root
// finding for gamma, Weibull, Gumbel and chi-squared. The triangular fit
// puts min and max at the data extremes and profiles the likelihood of the
// interior points over the mode.
//
// Needs n >= 8 (DomainError). Positive-support families need positive data
// (DomainError). Data with no spread throws FitError where the family needs it.
FittedDistribution fit_distribution(std::span<const double> data, Family family);

struct GofResult {
    double stat = 0.0;
    int df = 0;
    double p = 1.0;
    int bins = 0;
};

// Equal-probability bins under the fitted CDF, max(5, floor(n/5)) of them;
// df = bins - 1 - number of fitted parameters. Throws TooFewBinsError when
// df <= 0.
GofResult chi2_gof(std::span<const double> data, const FittedDistribution& fitted);

struct FitReport {
    Family family = Family::normal;
    std::vector<std::pair<std::string, double>> params;
    double gof_stat = 0.0;
    int gof_df = 0;
    double p_value = 0.0;
    bool ok = true;
    std::string failure;   // set when ok == false
};

// Fits and scores each family; sorted by descending p-value with ties broken
// by family name. Families that fail are kept, after the successful ones.
std::vector<FitReport> rank_families(std::span<const double> data, std::span<const Family> families);

}  // namespace cabl::stats
