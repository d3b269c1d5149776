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

#include "cabl/stats/distfit.hpp"

#include "cabl/errors.hpp"
#include "cabl/stats/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace cabl::stats {

std::string_view to_string(Family f) {
    switch (f) {
        case Family::exponential: return "exponential";
        case Family::weibull: return "weibull";
        case Family::gamma: return "gamma";
        case Family::lognormal: return "lognormal";
        case Family::gumbel: return "gumbel";
        case Family::triangular: return "triangular";
        case Family::chi_squared: return "chi_squared";
        case Family::normal: return "normal";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (Family f : kAllFamilies)
        if (to_string(f) == name) return f;
    if (name == "chi2" || name == "chisquared") return Family::chi_squared;
    throw DomainError("unknown distribution family '" + std::string(name) + "'");
}

std::vector<Family> parse_family_list(std::string_view list) {
    if (list == "all") return {std::begin(kAllFamilies), std::end(kAllFamilies)};
    std::vector<Family> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = list.find(',', start);
        const auto token = list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                               : comma - start);
        if (!token.empty()) {
            const Family f = parse_family(token);
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw DomainError("empty family list");
    return out;
}

std::vector<std::string_view> FittedDistribution::param_names() const {
    switch (family) {
        case Family::exponential: return {"rate"};
        case Family::weibull: return {"shape", "scale"};
        case Family::gamma: return {"shape", "scale"};
        case Family::lognormal: return {"log_mean", "log_sd"};
        case Family::gumbel: return {"location", "scale"};
        case Family::triangular: return {"min", "mode", "max"};
        case Family::chi_squared: return {"k"};
        case Family::normal: return {"mean", "sd"};
    }
    return {};
}

double FittedDistribution::cdf(double x) const {
    const auto& p = params;
    switch (family) {
        case Family::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-p[0] * x);
        case Family::weibull:
            return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p[1], p[0]));
        case Family::gamma:
            return x <= 0.0 ? 0.0 : regularized_gamma_p(p[0], x / p[1]);
        case Family::lognormal:
            return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - p[0]) / p[1]);
        case Family::gumbel:
            return std::exp(-std::exp(-(x - p[0]) / p[1]));
        case Family::triangular: {
            const double a = p[0], c = p[1], b = p[2];
            if (x <= a) return 0.0;
            if (x >= b) return 1.0;
            if (x <= c) return (x - a) * (x - a) / ((b - a) * (c - a));
            return 1.0 - (b - x) * (b - x) / ((b - a) * (b - c));
        }
        case Family::chi_squared:
            return chi_squared_cdf(x, p[0]);
        case Family::normal:
            return normal_cdf((x - p[0]) / p[1]);
    }
    return 0.0;
}

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double mean_log(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::log(x);
    return s / static_cast<double>(v.size());
}

double sd_mle(std::span<const double> v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

// Root of an increasing function on (lo, hi), expanding hi as needed.
double solve_increasing(const std::function<double(double)>& f, double lo, double hi,
                        std::string_view what) {
    int expand = 0;
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++expand > 200) throw FitError(std::string(what) + ": root not bracketed");
    }
    while (f(lo) > 0.0) {
        hi = lo;
        lo /= 2.0;
        if (++expand > 400) throw FitError(std::string(what) + ": root not bracketed");
    }
    for (int i = 0; i < 300 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool no_spread(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

FittedDistribution fit_gamma(std::span<const double> data) {
    const double m = mean_of(data);
    const double s = std::log(m) - mean_log(data);
    if (!(s > 0.0)) throw FitError("gamma fit needs data with spread");
    double k = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    for (int i = 0; i < 100; ++i) {
        const double f = std::log(k) - digamma(k) - s;
        const double fp = 1.0 / k - trigamma(k);
        double next = k - f / fp;
        if (!(next > 0.0)) next = 0.5 * k;
        const bool done = std::abs(next - k) < 1e-13 * k;
        k = next;
        if (done) break;
    }
    return {Family::gamma, {k, m / k}};
}

FittedDistribution fit_weibull(std::span<const double> data) {
    const double top = *std::max_element(data.begin(), data.end());
    std::vector<double> logs;
    for (double x : data) logs.push_back(std::log(x / top));
    const double mlog = mean_of(logs);
    // sum x^k ln x / sum x^k - 1/k - mean(ln x) is increasing in k.
    const auto g = [&](double k) {
        double num = 0.0, den = 0.0;
        for (double l : logs) {
            const double w = std::exp(k * l);
            num += w * l;
            den += w;
        }
        return num / den - 1.0 / k - mlog;
    };
    const double k = solve_increasing(g, 0.01, 2.0, "weibull shape");
    double acc = 0.0;
    for (double l : logs) acc += std::exp(k * l);
    const double scale = top * std::pow(acc / static_cast<double>(data.size()), 1.0 / k);
    return {Family::weibull, {k, scale}};
}

FittedDistribution fit_gumbel(std::span<const double> data) {
    const double m = mean_of(data);
    const double lo = *std::min_element(data.begin(), data.end());
    const auto weighted = [&](double beta, double& sum_w) {
        double num = 0.0;
        sum_w = 0.0;
        for (double x : data) {
            const double w = std::exp(-(x - lo) / beta);
            num += x * w;
            sum_w += w;
        }
        return num / sum_w;
    };
    const auto h = [&](double beta) {
        double sw = 0.0;
        return beta - m + weighted(beta, sw);
    };
    const double start = sd_mle(data, m) * std::sqrt(6.0) / std::numbers::pi;
    const double beta = solve_increasing(h, start * 1e-3, start * 2.0, "gumbel scale");
    double sw = 0.0;
    weighted(beta, sw);
    const double location = lo - beta * std::log(sw / static_cast<double>(data.size()));
    return {Family::gumbel, {location, beta}};
}

FittedDistribution fit_chi_squared(std::span<const double> data) {
    // d/dk log L = 0  <=>  digamma(k/2) = mean(ln x) - ln 2
    const double target = mean_log(data) - std::log(2.0);
    const double half = solve_increasing([&](double h) { return digamma(h) - target; }, 1e-3, 4.0,
                                         "chi-squared df");
    return {Family::chi_squared, {2.0 * half}};
}

FittedDistribution fit_triangular(std::span<const double> data) {
    std::vector<double> v(data.begin(), data.end());
    std::sort(v.begin(), v.end());
    const double a = v.front();
    const double b = v.back();
    const double range = b - a;
    // The extremes sit on the support boundary where the density vanishes;
    // only the interior points inform the mode.
    const std::span<const double> interior(v.data() + 1, v.size() - 2);
    const auto log_lik = [&](double c) {
        double ll = 0.0;
        for (double x : interior) {
            const double dens = x < c ? 2.0 * (x - a) / (range * (c - a))
                                      : 2.0 * (b - x) / (range * (b - c));
            if (!(dens > 0.0)) return -HUGE_VAL;
            ll += std::log(dens);
        }
        return ll;
    };
    double best_c = a;
    double best = -HUGE_VAL;
    std::vector<double> candidates{a, b};
    candidates.insert(candidates.end(), interior.begin(), interior.end());
    for (double c : candidates) {
        const double ll = log_lik(c);
        if (ll > best) {
            best = ll;
            best_c = c;
        }
    }
    if (!std::isfinite(best)) throw FitError("triangular fit failed: no mode gives positive likelihood");
    return {Family::triangular, {a, best_c, b}};
}

bool positive_support(Family f) {
    return f == Family::exponential || f == Family::weibull || f == Family::gamma ||
           f == Family::lognormal || f == Family::chi_squared;
}

}  // namespace

FittedDistribution fit_distribution(std::span<const double> data, Family family) {
    if (data.size() < 8) throw DomainError("distribution fitting needs at least 8 values");
    for (double x : data)
        if (!std::isfinite(x)) throw DomainError("data contain non-finite values");
    if (positive_support(family) &&
        std::any_of(data.begin(), data.end(), [](double x) { return !(x > 0.0); }))
        throw DomainError(std::string(to_string(family)) + " needs strictly positive data");
    if (family != Family::exponential && family != Family::chi_squared && no_spread(data))
        throw FitError(std::string(to_string(family)) + " fit needs data with spread");

    switch (family) {
        case Family::exponential:
            return {family, {1.0 / mean_of(data)}};
        case Family::normal: {
            const double m = mean_of(data);
            return {family, {m, sd_mle(data, m)}};
        }
        case Family::lognormal: {
            std::vector<double> logs;
            for (double x : data) logs.push_back(std::log(x));
            const double m = mean_of(logs);
            return {family, {m, sd_mle(logs, m)}};
        }
        case Family::gamma: return fit_gamma(data);
        case Family::weibull: return fit_weibull(data);
        case Family::gumbel: return fit_gumbel(data);
        case Family::chi_squared: return fit_chi_squared(data);
        case Family::triangular: return fit_triangular(data);
    }
    throw FitError("unknown family");
}

GofResult chi2_gof(std::span<const double> data, const FittedDistribution& fitted) {
    const auto n = static_cast<int>(data.size());
    if (n < 8) throw DomainError("goodness of fit needs at least 8 values");
    GofResult r;
    r.bins = std::max(5, n / 5);
    r.df = r.bins - 1 - fitted.param_count();
    if (r.df <= 0)
        throw TooFewBinsError(std::to_string(r.bins) + " bins leave no degrees of freedom for " +
                              std::to_string(fitted.param_count()) + " fitted parameters");
    std::vector<int> observed(static_cast<std::size_t>(r.bins), 0);
    for (double x : data) {
        const double u = fitted.cdf(x);
        auto bin = static_cast<int>(std::floor(u * r.bins));
        bin = std::clamp(bin, 0, r.bins - 1);
        ++observed[static_cast<std::size_t>(bin)];
    }
    const double expected = static_cast<double>(n) / r.bins;
    for (int o : observed) r.stat += (o - expected) * (o - expected) / expected;
    r.p = chi_squared_sf(r.stat, r.df);
    return r;
}

std::vector<FitReport> rank_families(std::span<const double> data, std::span<const Family> families) {
    std::vector<FitReport> reports;
    for (Family f : families) {
        FitReport rep;
        rep.family = f;
        try {
            const FittedDistribution fit = fit_distribution(data, f);
            const auto names = fit.param_names();
            for (std::size_t i = 0; i < fit.params.size(); ++i)
                rep.params.emplace_back(std::string(names[i]), fit.params[i]);
            const GofResult g = chi2_gof(data, fit);
            rep.gof_stat = g.stat;
            rep.gof_df = g.df;
            rep.p_value = g.p;
        } catch (const Error& e) {
            rep.ok = false;
            rep.failure = e.what();
        }
        reports.push_back(std::move(rep));
    }
    std::stable_sort(reports.begin(), reports.end(), [](const FitReport& a, const FitReport& b) {
        if (a.ok != b.ok) return a.ok;
        if (a.ok && a.p_value != b.p_value) return a.p_value > b.p_value;
        return to_string(a.family) < to_string(b.family);
    });
    return reports;
}

}  // namespace cabl::stats
