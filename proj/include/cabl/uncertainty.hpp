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

// Counting-statistics and replicate uncertainties, bias application, and
// the NAA reduction steps: decay factors, comparator concentration and
// gamma self-absorption in lead.

#include "cabl/core_model.hpp"

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace cabl {

// sqrt(N) for a single Poisson count.
double poisson_sigma(std::uint64_t counts);

// Mean, standard error (sample SD / sqrt(n)) and df = n - 1.
// Throws InsufficientReplicatesError when fewer than two values are given.
ElementSeries replicate_summary(Element element, std::span<const double> values);

// Scales mean and se by (1 + c); df and n are carried through. Requires c > -1.
ElementSeries apply_bias(const ElementSeries& s, double c);

// Irradiate / decay / count schedule. All times in seconds.
struct DecaySchedule {
    double half_life = 0.0;
    double t_irradiate = 0.0;
    double t_decay = 0.0;     // may be +inf
    double t_count = 0.0;

    void validate() const;
};

// (1 - e^{-lambda Ti}) e^{-lambda Td} (1 - e^{-lambda Tc}) / lambda, in seconds.
double decay_factor(const DecaySchedule& d);

struct ComparatorInput {
    double sample_counts = 0.0;
    double sample_mass_mg = 0.0;
    double std_counts = 0.0;
    double std_mass_ug = 0.0;     // micrograms of the element in the standard
    DecaySchedule sample_schedule;
    DecaySchedule std_schedule;
};

// Comparator-method concentration in ppm (ug analyte per g sample). Flux is
// assumed common to sample and standard and cancels.
double comparator_concentration(const ComparatorInput& in);

struct AttenuationEntry {
    double energy_kev = 0.0;
    double mu_linear_per_cm = 0.0;

    friend bool operator==(const AttenuationEntry&, const AttenuationEntry&) = default;
};

// Tabulated linear attenuation coefficients, sorted by energy, with log-log
// interpolation between grid points.
class AttenuationTable {
public:
    AttenuationTable() = default;
    explicit AttenuationTable(std::vector<AttenuationEntry> entries);

    const std::vector<AttenuationEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    // Throws DomainError outside the tabulated energy range.
    double mu_at(double energy_kev) const;
    AttenuationEntry entry_at(double energy_kev) const { return {energy_kev, mu_at(energy_kev)}; }

private:
    std::vector<AttenuationEntry> entries_;
};

// CSV with header `energy_kev,mu_linear_per_cm`.
AttenuationTable parse_attenuation_csv(std::istream& in);
std::string render_attenuation_csv(const AttenuationTable& table);

// Lead (rho = 11.35 g/cm3) on the 0.4-1.0 MeV photon grid, from the NIST
// XCOM / Hubbell-Seltzer total mass attenuation coefficients (with coherent
// scattering): 0.2323, 0.1614, 0.1248, 0.08870, 0.07102 cm2/g at
// 400, 500, 600, 800, 1000 keV.
AttenuationTable default_lead_attenuation();
inline constexpr double kLeadDensity = 11.35;

// 1 - exp(-mu * L/2), L the mean maximum linear dimension. The emission is
// taken to originate mid-sample, so the effective path is half of L.
double self_absorption_loss(double mean_max_dimension_mm, const AttenuationEntry& entry);

}  // namespace cabl
