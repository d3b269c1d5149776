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

#include "cabl/uncertainty.hpp"

#include "cabl/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace cabl {

double poisson_sigma(std::uint64_t counts) {
    return std::sqrt(static_cast<double>(counts));
}

ElementSeries replicate_summary(Element element, std::span<const double> values) {
    const auto n = values.size();
    if (n < 2)
        throw InsufficientReplicatesError("replicate summary needs at least 2 values, got " +
                                          std::to_string(n));
    // Sort first so the floating-point result does not depend on row order.
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return ElementSeries::replicate(element, mean, sd / std::sqrt(static_cast<double>(n)),
                                    static_cast<int>(n));
}

ElementSeries apply_bias(const ElementSeries& s, double c) {
    if (!(c > -1.0)) throw DomainError("bias correction must exceed -100%");
    ElementSeries out = s;
    out.mean = s.mean * (1.0 + c);
    out.se = s.se * (1.0 + c);
    return out;
}

void DecaySchedule::validate() const {
    if (!(half_life > 0.0)) throw DomainError("half-life must be positive");
    if (!(t_irradiate > 0.0) || !std::isfinite(t_irradiate))
        throw DomainError("irradiation time must be positive");
    if (!(t_decay > 0.0)) throw DomainError("decay time must be positive");
    if (!(t_count > 0.0) || !std::isfinite(t_count)) throw DomainError("count time must be positive");
}

double decay_factor(const DecaySchedule& d) {
    d.validate();
    if (std::isinf(d.t_decay)) return 0.0;
    const double lambda = std::log(2.0) / d.half_life;
    // -expm1(-x) = 1 - e^{-x} without cancellation for short times.
    const double saturation = -std::expm1(-lambda * d.t_irradiate);
    const double decay = std::exp(-lambda * d.t_decay);
    const double counting = -std::expm1(-lambda * d.t_count);
    return saturation * decay * counting / lambda;
}

double comparator_concentration(const ComparatorInput& in) {
    if (!(in.sample_counts >= 0.0)) throw DomainError("sample counts must be nonnegative");
    if (!(in.sample_mass_mg > 0.0)) throw DomainError("sample mass must be positive");
    if (!(in.std_mass_ug > 0.0)) throw DomainError("standard mass must be positive");
    if (!(in.std_counts > 0.0)) throw DomainError("standard counts must be positive (division by zero)");
    const double f_sample = decay_factor(in.sample_schedule);
    const double f_std = decay_factor(in.std_schedule);
    if (!(f_sample > 0.0) || !(f_std > 0.0))
        throw DomainError("decay factor underflowed to zero; schedule decays completely");
    const double specific_sample = in.sample_counts / f_sample;
    const double specific_std = in.std_counts / f_std;
    const double sample_mass_g = in.sample_mass_mg * 1e-3;
    return (in.std_mass_ug / sample_mass_g) * (specific_sample / specific_std);
}

AttenuationTable::AttenuationTable(std::vector<AttenuationEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.energy_kev < b.energy_kev; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].energy_kev > 0.0) || !(entries_[i].mu_linear_per_cm > 0.0))
            throw DomainError("attenuation entries need positive energy and mu");
        if (i > 0 && entries_[i].energy_kev == entries_[i - 1].energy_kev)
            throw DomainError("duplicate attenuation energy " + std::to_string(entries_[i].energy_kev));
    }
}

double AttenuationTable::mu_at(double energy_kev) const {
    if (entries_.empty()) throw DomainError("attenuation table is empty");
    const auto& front = entries_.front();
    const auto& back = entries_.back();
    if (energy_kev < front.energy_kev || energy_kev > back.energy_kev)
        throw DomainError("energy " + std::to_string(energy_kev) + " keV outside attenuation table");
    auto hi = std::lower_bound(entries_.begin(), entries_.end(), energy_kev,
                               [](const AttenuationEntry& e, double x) { return e.energy_kev < x; });
    if (hi->energy_kev == energy_kev) return hi->mu_linear_per_cm;
    auto lo = std::prev(hi);
    const double t = std::log(energy_kev / lo->energy_kev) / std::log(hi->energy_kev / lo->energy_kev);
    return std::exp(std::log(lo->mu_linear_per_cm) +
                    t * std::log(hi->mu_linear_per_cm / lo->mu_linear_per_cm));
}

namespace {

double parse_number(std::string_view field, std::size_t line) {
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, "not a number: '" + std::string(field) + "'");
    return v;
}

}  // namespace

AttenuationTable parse_attenuation_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<AttenuationEntry> entries;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "energy_kev,mu_linear_per_cm")
                throw ParseError(lineno, "expected header 'energy_kev,mu_linear_per_cm'");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError(lineno, "expected two fields");
        const std::string_view sv(line);
        entries.push_back({parse_number(sv.substr(0, comma), lineno),
                           parse_number(sv.substr(comma + 1), lineno)});
    }
    if (!header_seen) throw ParseError(lineno, "missing header");
    return AttenuationTable(std::move(entries));
}

std::string render_attenuation_csv(const AttenuationTable& table) {
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << "energy_kev,mu_linear_per_cm\n";
    for (const auto& e : table.entries()) os << e.energy_kev << ',' << e.mu_linear_per_cm << '\n';
    return os.str();
}

AttenuationTable default_lead_attenuation() {
    constexpr std::array<std::pair<double, double>, 5> mass_attenuation{{
        {400.0, 0.2323}, {500.0, 0.1614}, {600.0, 0.1248}, {800.0, 0.08870}, {1000.0, 0.07102}}};
    std::vector<AttenuationEntry> entries;
    for (const auto& [e, mu_rho] : mass_attenuation) entries.push_back({e, mu_rho * kLeadDensity});
    return AttenuationTable(std::move(entries));
}

double self_absorption_loss(double mean_max_dimension_mm, const AttenuationEntry& entry) {
    if (!(mean_max_dimension_mm > 0.0)) throw DomainError("sample dimension must be positive");
    if (!(entry.mu_linear_per_cm >= 0.0)) throw DomainError("attenuation coefficient must be nonnegative");
    const double path_cm = 0.5 * mean_max_dimension_mm * 0.1;
    return -std::expm1(-entry.mu_linear_per_cm * path_cm);
}

}  // namespace cabl
