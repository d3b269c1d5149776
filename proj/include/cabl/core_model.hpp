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

// Domain types shared across the library: the seven-element analyte panel,
// per-element measurement summaries, specimens and match criteria.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cabl {

enum class Element : std::uint8_t { Sb, Ag, As, Cu, Bi, Sn, Cd };

inline constexpr std::array<Element, 7> kPanelElements{
    Element::Sb, Element::Ag, Element::As, Element::Cu,
    Element::Bi, Element::Sn, Element::Cd};

std::string_view to_string(Element e);
// Accepts the chemical symbol, case-insensitively. Throws DomainError.
Element parse_element(std::string_view symbol);
// Comma-separated symbols, e.g. "Sb,Ag". Duplicates are rejected.
std::vector<Element> parse_element_list(std::string_view list);

enum class Location : std::uint8_t { outer, middle, inner, unlabeled };

std::string_view to_string(Location loc);
Location parse_location(std::string_view text);

enum class SpecimenKind : std::uint8_t { fragment, bullet, bullet_section };

std::string_view to_string(SpecimenKind kind);
SpecimenKind parse_specimen_kind(std::string_view text);

// How a CSV row's uncertainty was obtained. `summary` rows carry an already
// reduced mean and standard error together with the replicate count.
enum class Basis : std::uint8_t { poisson_single, replicate_member, summary };

std::string_view to_string(Basis basis);
Basis parse_basis(std::string_view text);

struct RawMeasurement {
    std::string specimen_id;
    SpecimenKind kind = SpecimenKind::fragment;
    std::optional<std::string> lot;
    Location location = Location::unlabeled;
    Element element = Element::Sb;
    double value = 0.0;                 // ppm
    std::optional<double> sigma;        // ppm; absent for replicate_member
    Basis basis = Basis::poisson_single;
    std::optional<int> n;               // summary rows only
};

// One element's measurement summary for one specimen. Concentrations in ppm.
struct ElementSeries {
    Element element = Element::Sb;
    double mean = 0.0;
    double se = 0.0;           // standard error of the mean
    std::optional<int> df;     // none for a single Poisson-counted observation
    int n = 1;

    // Single observation whose sigma comes from counting statistics.
    static ElementSeries poisson_single(Element element, double value, double sigma);
    // Replicate-based summary; df = n - 1.
    static ElementSeries replicate(Element element, double mean, double se, int n);

    bool has_df() const noexcept { return df.has_value(); }

    friend bool operator==(const ElementSeries&, const ElementSeries&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return 0.5 * (lo + hi); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// [mean - k*se, mean + k*se]. Requires k > 0.
Interval series_interval(const ElementSeries& s, double k);

struct Specimen {
    std::string id;
    SpecimenKind kind = SpecimenKind::fragment;
    std::optional<std::string> lot;
    Location location = Location::unlabeled;
    std::map<Element, ElementSeries> series;

    const ElementSeries* find(Element e) const;
    // Throws IncompletePanelError naming this specimen and the element.
    const ElementSeries& at(Element e) const;

    friend bool operator==(const Specimen&, const Specimen&) = default;
};

// Relative correction range [c_lo, c_hi] applied multiplicatively as (1 + c).
struct BiasCorrection {
    Element element = Element::Sb;
    double c_lo = 0.0;
    double c_hi = 0.0;

    static BiasCorrection make(Element element, double c_lo, double c_hi);

    friend bool operator==(const BiasCorrection&, const BiasCorrection&) = default;
};

using BiasTable = std::map<Element, BiasCorrection>;

// Sb +2% to +5.4%, Ag +5.5%.
BiasTable default_bias_table();

enum class Boundary : std::uint8_t { closed, open };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

struct MatchCriterion {
    std::string name = "custom";
    double k = 4.0;
    std::vector<Element> elements{Element::Sb, Element::Ag};
    // Applied to the first (questioned) specimen of a comparison only.
    BiasTable bias;
    Boundary boundary = Boundary::closed;

    // Throws DomainError on k <= 0, an empty panel or duplicate elements.
    void validate() const;

    MatchCriterion without_bias() const;

    // k = 4, {Sb, Ag}, no bias, closed.
    static MatchCriterion guinn4();
    // k = 2, bias on (default table), closed.
    static MatchCriterion nrc2(std::vector<Element> panel = {Element::Sb, Element::Ag});
    // "guinn4" or "nrc2"; throws DomainError otherwise.
    static MatchCriterion preset(std::string_view name);
};

}  // namespace cabl
