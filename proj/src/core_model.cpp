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

#include "cabl/core_model.hpp"

#include "cabl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace cabl {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(Element e) {
    switch (e) {
        case Element::Sb: return "Sb";
        case Element::Ag: return "Ag";
        case Element::As: return "As";
        case Element::Cu: return "Cu";
        case Element::Bi: return "Bi";
        case Element::Sn: return "Sn";
        case Element::Cd: return "Cd";
    }
    return "?";
}

Element parse_element(std::string_view symbol) {
    const std::string s = lower(trim(symbol));
    for (Element e : kPanelElements) {
        if (lower(to_string(e)) == s) return e;
    }
    throw DomainError("unknown element symbol '" + std::string(symbol) +
                      "' (expected one of Sb, Ag, As, Cu, Bi, Sn, Cd)");
}

std::vector<Element> parse_element_list(std::string_view list) {
    std::vector<Element> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto end = comma == std::string_view::npos ? list.size() : comma;
        const auto token = trim(list.substr(start, end - start));
        if (!token.empty()) {
            const Element e = parse_element(token);
            if (std::find(out.begin(), out.end(), e) != out.end())
                throw DomainError("element " + std::string(to_string(e)) + " listed twice");
            out.push_back(e);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw DomainError("empty element list");
    return out;
}

std::string_view to_string(Location loc) {
    switch (loc) {
        case Location::outer: return "outer";
        case Location::middle: return "middle";
        case Location::inner: return "inner";
        case Location::unlabeled: return "unlabeled";
    }
    return "?";
}

Location parse_location(std::string_view text) {
    const std::string s = lower(trim(text));
    if (s == "outer") return Location::outer;
    if (s == "middle") return Location::middle;
    if (s == "inner") return Location::inner;
    if (s == "unlabeled" || s.empty()) return Location::unlabeled;
    throw DomainError("unknown location '" + std::string(text) + "'");
}

std::string_view to_string(SpecimenKind kind) {
    switch (kind) {
        case SpecimenKind::fragment: return "fragment";
        case SpecimenKind::bullet: return "bullet";
        case SpecimenKind::bullet_section: return "bullet_section";
    }
    return "?";
}

SpecimenKind parse_specimen_kind(std::string_view text) {
    const std::string s = lower(trim(text));
    if (s == "fragment") return SpecimenKind::fragment;
    if (s == "bullet") return SpecimenKind::bullet;
    if (s == "bullet_section") return SpecimenKind::bullet_section;
    throw DomainError("unknown specimen kind '" + std::string(text) + "'");
}

std::string_view to_string(Basis basis) {
    switch (basis) {
        case Basis::poisson_single: return "poisson_single";
        case Basis::replicate_member: return "replicate_member";
        case Basis::summary: return "summary";
    }
    return "?";
}

Basis parse_basis(std::string_view text) {
    const std::string s = lower(trim(text));
    if (s == "poisson_single") return Basis::poisson_single;
    if (s == "replicate_member") return Basis::replicate_member;
    if (s == "summary") return Basis::summary;
    throw DomainError("unknown basis '" + std::string(text) + "'");
}

ElementSeries ElementSeries::poisson_single(Element element, double value, double sigma) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError("concentration must be positive, got " + std::to_string(value));
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw DomainError("sigma must be nonnegative, got " + std::to_string(sigma));
    return ElementSeries{element, value, sigma, std::nullopt, 1};
}

ElementSeries ElementSeries::replicate(Element element, double mean, double se, int n) {
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw DomainError("mean concentration must be positive, got " + std::to_string(mean));
    if (!(se >= 0.0) || !std::isfinite(se))
        throw DomainError("standard error must be nonnegative, got " + std::to_string(se));
    if (n < 2) throw InsufficientReplicatesError("replicate series needs n >= 2, got " + std::to_string(n));
    return ElementSeries{element, mean, se, n - 1, n};
}

Interval series_interval(const ElementSeries& s, double k) {
    if (!(k > 0.0)) throw DomainError("interval multiplier k must be positive");
    return Interval{s.mean - k * s.se, s.mean + k * s.se};
}

const ElementSeries* Specimen::find(Element e) const {
    const auto it = series.find(e);
    return it == series.end() ? nullptr : &it->second;
}

const ElementSeries& Specimen::at(Element e) const {
    if (const auto* s = find(e)) return *s;
    throw IncompletePanelError(id, std::string(to_string(e)));
}

BiasCorrection BiasCorrection::make(Element element, double c_lo, double c_hi) {
    if (!(c_lo <= c_hi)) throw DomainError("bias range must satisfy c_lo <= c_hi");
    if (!(c_lo > -1.0)) throw DomainError("bias correction must exceed -100%");
    return BiasCorrection{element, c_lo, c_hi};
}

BiasTable default_bias_table() {
    return {
        {Element::Sb, BiasCorrection::make(Element::Sb, 0.02, 0.054)},
        {Element::Ag, BiasCorrection::make(Element::Ag, 0.055, 0.055)},
    };
}

std::string_view to_string(Boundary b) {
    return b == Boundary::closed ? "closed" : "open";
}

Boundary parse_boundary(std::string_view text) {
    const std::string s = lower(trim(text));
    if (s == "closed") return Boundary::closed;
    if (s == "open") return Boundary::open;
    throw DomainError("boundary must be 'closed' or 'open', got '" + std::string(text) + "'");
}

void MatchCriterion::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("criterion k must be positive");
    if (elements.empty()) throw DomainError("criterion element panel is empty");
    std::set<Element> seen(elements.begin(), elements.end());
    if (seen.size() != elements.size()) throw DomainError("criterion panel lists an element twice");
    for (const auto& [e, b] : bias) {
        if (b.element != e || !(b.c_lo <= b.c_hi) || !(b.c_lo > -1.0))
            throw DomainError("invalid bias entry for " + std::string(to_string(e)));
    }
}

MatchCriterion MatchCriterion::without_bias() const {
    MatchCriterion c = *this;
    c.bias.clear();
    return c;
}

MatchCriterion MatchCriterion::guinn4() {
    MatchCriterion c;
    c.name = "guinn4";
    c.k = 4.0;
    c.elements = {Element::Sb, Element::Ag};
    c.boundary = Boundary::closed;
    return c;
}

MatchCriterion MatchCriterion::nrc2(std::vector<Element> panel) {
    MatchCriterion c;
    c.name = "nrc2";
    c.k = 2.0;
    c.elements = std::move(panel);
    c.bias = default_bias_table();
    c.boundary = Boundary::closed;
    return c;
}

MatchCriterion MatchCriterion::preset(std::string_view name) {
    const std::string s = lower(trim(name));
    if (s == "guinn4") return guinn4();
    if (s == "nrc2") return nrc2();
    throw DomainError("unknown criterion preset '" + std::string(name) + "' (guinn4, nrc2)");
}

}  // namespace cabl
