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

#include "cabl/stats/manova.hpp"

#include "cabl/errors.hpp"
#include "cabl/stats/special_functions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace cabl::stats {

namespace {

using Eigen::MatrixXd;

struct Design {
    MatrixXd x;                  // N x (a*b), effect coded
    std::vector<int> bullet_cols;
    std::vector<int> location_cols;
    std::vector<int> interaction_cols;
};

double effect_code(std::size_t level, std::size_t col, std::size_t levels) {
    if (level == col) return 1.0;
    if (level == levels - 1) return -1.0;
    return 0.0;
}

MatrixXd residual_sscp(const MatrixXd& x, const MatrixXd& y) {
    const MatrixXd beta = x.colPivHouseholderQr().solve(y);
    const MatrixXd r = y - x * beta;
    return r.transpose() * r;
}

MatrixXd drop_columns(const MatrixXd& x, const std::vector<int>& drop) {
    std::vector<int> keep;
    for (int c = 0; c < x.cols(); ++c)
        if (std::find(drop.begin(), drop.end(), c) == drop.end()) keep.push_back(c);
    MatrixXd out(x.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = x.col(keep[i]);
    return out;
}

EffectTest test_effect(std::string name, const MatrixXd& e, const MatrixXd& h_raw, int q, int error_df) {
    const MatrixXd h = 0.5 * (h_raw + h_raw.transpose());
    const auto p = static_cast<double>(e.rows());
    const auto nu = static_cast<double>(error_df);
    const auto qd = static_cast<double>(q);

    EffectTest t;
    t.effect = std::move(name);
    t.df_hypothesis = q;

    const double det_e = e.determinant();
    const double det_eh = (e + h).determinant();
    t.wilks_lambda = std::clamp(det_e / det_eh, 0.0, 1.0);

    // Rao's F approximation.
    const double pq = p * qd;
    const double denom = p * p + qd * qd - 5.0;
    const double s_rao = denom > 0.0 ? std::sqrt((p * p * qd * qd - 4.0) / denom) : 1.0;
    const double w = nu + qd - (p + qd + 1.0) / 2.0;
    t.wilks_df1 = pq;
    t.wilks_df2 = w * s_rao - (pq - 2.0) / 2.0;
    const double root = std::pow(t.wilks_lambda, 1.0 / s_rao);
    if (t.wilks_df2 > 0.0 && root > 0.0) {
        t.wilks_f = (1.0 - root) / root * t.wilks_df2 / t.wilks_df1;
        t.wilks_p = f_sf(t.wilks_f, t.wilks_df1, t.wilks_df2);
    } else {
        t.wilks_f = std::numeric_limits<double>::quiet_NaN();
        t.wilks_p = std::numeric_limits<double>::quiet_NaN();
    }

    // Hotelling-Lawley trace and its F approximation.
    t.hotelling_lawley = std::max(0.0, e.ldlt().solve(h).trace());
    const double s = std::min(p, qd);
    const double m = (std::abs(p - qd) - 1.0) / 2.0;
    const double n = (nu - p - 1.0) / 2.0;
    t.hl_df1 = s * (2.0 * m + s + 1.0);
    t.hl_df2 = 2.0 * (s * n + 1.0);
    if (t.hl_df2 > 0.0) {
        t.hl_f = t.hl_df2 * t.hotelling_lawley / (s * t.hl_df1);
        t.hl_p = f_sf(t.hl_f, t.hl_df1, t.hl_df2);
    } else {
        t.hl_f = std::numeric_limits<double>::quiet_NaN();
        t.hl_p = std::numeric_limits<double>::quiet_NaN();
    }
    return t;
}

EffectTest null_effect(std::string name, int q) {
    EffectTest t;
    t.effect = std::move(name);
    t.df_hypothesis = q;
    t.wilks_p = 1.0;
    t.hl_p = 1.0;
    return t;
}

}  // namespace

ManovaResult manova_two_way(std::span<const FactorialObservation> data) {
    if (data.empty()) throw DesignError("MANOVA needs observations");
    const std::size_t p = data.front().responses.size();
    if (p == 0) throw DesignError("MANOVA needs at least one response");

    std::set<std::string> bullets, locations;
    for (const auto& o : data) {
        if (o.responses.size() != p) throw DesignError("response vectors differ in length");
        for (double v : o.responses)
            if (!std::isfinite(v)) throw DesignError("non-finite response");
        bullets.insert(o.bullet);
        locations.insert(o.location);
    }
    ManovaResult r;
    r.bullet_levels.assign(bullets.begin(), bullets.end());
    r.location_levels.assign(locations.begin(), locations.end());
    const std::size_t a = r.bullet_levels.size();
    const std::size_t b = r.location_levels.size();
    if (a < 2 || b < 2) throw DesignError("each factor needs at least two levels");

    const auto index_of = [](const std::vector<std::string>& levels, const std::string& v) {
        return static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), v) - levels.begin());
    };

    std::map<std::pair<std::size_t, std::size_t>, int> cell_counts;
    for (const auto& o : data)
        ++cell_counts[{index_of(r.bullet_levels, o.bullet), index_of(r.location_levels, o.location)}];
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            const auto it = cell_counts.find({i, j});
            if (it == cell_counts.end())
                throw DesignError("empty cell: bullet '" + r.bullet_levels[i] + "', location '" +
                                  r.location_levels[j] + "'");
            if (it->second < 2)
                throw DesignError("cell bullet '" + r.bullet_levels[i] + "', location '" +
                                  r.location_levels[j] + "' needs at least two replicates");
        }
    }

    const auto n_obs = static_cast<Eigen::Index>(data.size());
    const auto cols = static_cast<Eigen::Index>(a * b);
    Design d;
    d.x = MatrixXd::Zero(n_obs, cols);
    MatrixXd y(n_obs, static_cast<Eigen::Index>(p));
    for (Eigen::Index row = 0; row < n_obs; ++row) {
        const auto& o = data[static_cast<std::size_t>(row)];
        const std::size_t bi = index_of(r.bullet_levels, o.bullet);
        const std::size_t li = index_of(r.location_levels, o.location);
        Eigen::Index c = 0;
        d.x(row, c++) = 1.0;
        std::vector<double> bcode(a - 1), lcode(b - 1);
        for (std::size_t k = 0; k + 1 < a; ++k) bcode[k] = d.x(row, c++) = effect_code(bi, k, a);
        for (std::size_t k = 0; k + 1 < b; ++k) lcode[k] = d.x(row, c++) = effect_code(li, k, b);
        for (std::size_t i = 0; i + 1 < a; ++i)
            for (std::size_t j = 0; j + 1 < b; ++j) d.x(row, c++) = bcode[i] * lcode[j];
        for (std::size_t k = 0; k < p; ++k) y(row, static_cast<Eigen::Index>(k)) = o.responses[k];
    }
    int c = 1;
    for (std::size_t k = 0; k + 1 < a; ++k) d.bullet_cols.push_back(c++);
    for (std::size_t k = 0; k + 1 < b; ++k) d.location_cols.push_back(c++);
    for (std::size_t k = 0; k < (a - 1) * (b - 1); ++k) d.interaction_cols.push_back(c++);

    r.responses = static_cast<int>(p);
    r.observations = static_cast<int>(n_obs);
    r.error_df = static_cast<int>(n_obs - cols);
    const int q_bullet = static_cast<int>(a - 1);
    const int q_location = static_cast<int>(b - 1);
    const int q_inter = q_bullet * q_location;

    const MatrixXd centered = y.rowwise() - y.colwise().mean();
    const double total_ss = (centered.transpose() * centered).trace();
    if (total_ss == 0.0) {
        r.bullet = null_effect("bullet", q_bullet);
        r.location = null_effect("location", q_location);
        r.interaction = null_effect("bullet:location", q_inter);
        return r;
    }

    const MatrixXd e = residual_sscp(d.x, y);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (e + e.transpose()), Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().maxCoeff();
    if (largest <= 1e-13 * total_ss || eig.eigenvalues().minCoeff() <= 1e-12 * largest)
        throw RankError("within-cell SSCP matrix is singular; responses are collinear or constant");
    if (static_cast<std::size_t>(r.error_df) < p)
        throw RankError("too few error degrees of freedom for the number of responses");

    const auto hypothesis = [&](const std::vector<int>& cols_to_drop) {
        return MatrixXd(residual_sscp(drop_columns(d.x, cols_to_drop), y) - e);
    };
    r.bullet = test_effect("bullet", e, hypothesis(d.bullet_cols), q_bullet, r.error_df);
    r.location = test_effect("location", e, hypothesis(d.location_cols), q_location, r.error_df);
    r.interaction = test_effect("bullet:location", e, hypothesis(d.interaction_cols), q_inter, r.error_df);
    return r;
}

std::vector<FactorialObservation> log_responses(std::span<const FactorialObservation> data) {
    std::vector<FactorialObservation> out(data.begin(), data.end());
    for (auto& o : out) {
        for (double& v : o.responses) {
            if (!(v > 0.0)) throw DomainError("log transform needs positive responses");
            v = std::log(v);
        }
    }
    return out;
}

}  // namespace cabl::stats
