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

#include "cabl/ingest.hpp"

#include "cabl/errors.hpp"
#include "cabl/uncertainty.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace cabl {

const Specimen* Dataset::find(std::string_view id) const {
    for (const auto& s : specimens)
        if (s.id == id) return &s;
    return nullptr;
}

const Specimen& Dataset::at(std::string_view id) const {
    if (const auto* s = find(id)) return *s;
    throw DomainError("no specimen '" + std::string(id) + "' in " + provenance);
}

Dataset Dataset::subset(const std::function<bool(const Specimen&)>& keep) const {
    Dataset out;
    out.provenance = provenance;
    for (const auto& s : specimens)
        if (keep(s)) out.specimens.push_back(s);
    return out;
}

namespace {

constexpr std::array<std::string_view, 8> kColumns{
    "specimen_id", "kind", "lot", "location", "element", "value_ppm", "sigma_ppm", "basis"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

double to_double(std::string_view field, std::size_t line, std::string_view column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, std::string(column) + " is not a number: '" + std::string(field) + "'");
    return v;
}

int to_int(std::string_view field, std::size_t line, std::string_view column) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, std::string(column) + " is not an integer: '" + std::string(field) + "'");
    return v;
}

// Wraps a domain-level failure from a value constructor with the line number.
template <class F>
auto at_line(std::size_t line, F&& f) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const InsufficientReplicatesError& e) {
        throw InsufficientReplicatesError("line " + std::to_string(line) + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError("line " + std::to_string(line) + ": " + e.what());
    }
}

// Unrecognised enum text makes the row malformed.
template <class F>
auto parse_field(std::size_t line, F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw ParseError(line, e.what());
    }
}

struct PendingSeries {
    Basis basis = Basis::poisson_single;
    std::size_t first_line = 0;
    std::optional<ElementSeries> fixed;   // poisson_single / summary
    std::vector<double> replicates;
};

struct PendingSpecimen {
    Specimen head;
    std::size_t first_line = 0;
    std::map<Element, PendingSeries> series;
};

RawMeasurement parse_row(const std::vector<std::string_view>& f, bool has_n, std::size_t line) {
    RawMeasurement r;
    if (f[0].empty()) throw ParseError(line, "empty specimen_id");
    r.specimen_id = std::string(f[0]);
    r.kind = parse_field(line, [&] { return parse_specimen_kind(f[1]); });
    if (!f[2].empty()) r.lot = std::string(f[2]);
    r.location = parse_field(line, [&] { return parse_location(f[3]); });
    r.element = parse_field(line, [&] { return parse_element(f[4]); });
    r.value = to_double(f[5], line, "value_ppm");
    if (!f[6].empty()) r.sigma = to_double(f[6], line, "sigma_ppm");
    r.basis = parse_field(line, [&] { return parse_basis(f[7]); });
    if (has_n && !f[8].empty()) r.n = to_int(f[8], line, "n");

    if (r.value < 0.0) throw DomainError("line " + std::to_string(line) + ": negative value_ppm");
    if (r.sigma && *r.sigma < 0.0) throw DomainError("line " + std::to_string(line) + ": negative sigma_ppm");

    switch (r.basis) {
        case Basis::poisson_single:
            if (!r.sigma) throw ParseError(line, "poisson_single row needs sigma_ppm");
            if (r.n) throw ParseError(line, "n is only allowed on summary rows");
            break;
        case Basis::replicate_member:
            if (r.sigma) throw ParseError(line, "replicate_member row must leave sigma_ppm empty");
            if (r.n) throw ParseError(line, "n is only allowed on summary rows");
            break;
        case Basis::summary:
            if (!r.sigma) throw ParseError(line, "summary row needs sigma_ppm (standard error)");
            if (!r.n) throw ParseError(line, "summary row needs n");
            break;
    }
    return r;
}

}  // namespace

Dataset parse_csv(std::istream& in, std::string provenance) {
    std::string text;
    std::size_t lineno = 0;
    bool has_n = false;
    bool header_seen = false;

    std::vector<PendingSpecimen> pending;
    std::map<std::string, std::size_t> index;

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (!header_seen) {
            const bool base_ok = fields.size() >= kColumns.size() &&
                                 std::equal(kColumns.begin(), kColumns.end(), fields.begin());
            has_n = fields.size() == kColumns.size() + 1 && fields.back() == "n";
            if (!base_ok || (fields.size() != kColumns.size() && !has_n))
                throw ParseError(lineno, "header must be specimen_id,kind,lot,location,element,"
                                         "value_ppm,sigma_ppm,basis[,n]");
            header_seen = true;
            continue;
        }
        const std::size_t expected = kColumns.size() + (has_n ? 1 : 0);
        if (fields.size() != expected)
            throw ParseError(lineno, "expected " + std::to_string(expected) + " fields, got " +
                                         std::to_string(fields.size()));
        const RawMeasurement r = parse_row(fields, has_n, lineno);

        auto [it, inserted] = index.try_emplace(r.specimen_id, pending.size());
        if (inserted) {
            PendingSpecimen p;
            p.head.id = r.specimen_id;
            p.head.kind = r.kind;
            p.head.lot = r.lot;
            p.head.location = r.location;
            p.first_line = lineno;
            pending.push_back(std::move(p));
        }
        PendingSpecimen& spec = pending[it->second];
        if (spec.head.kind != r.kind || spec.head.lot != r.lot || spec.head.location != r.location)
            throw ConflictError("line " + std::to_string(lineno) + ": specimen '" + r.specimen_id +
                                "' disagrees with line " + std::to_string(spec.first_line) +
                                " on kind, lot or location (use one specimen id per location)");

        auto [sit, fresh] = spec.series.try_emplace(r.element);
        PendingSeries& ps = sit->second;
        if (fresh) {
            ps.basis = r.basis;
            ps.first_line = lineno;
        } else if (ps.basis != r.basis || r.basis != Basis::replicate_member) {
            throw ConflictError("line " + std::to_string(lineno) + ": duplicate " +
                                std::string(to_string(r.element)) + " measurement for '" +
                                r.specimen_id + "' (first seen on line " +
                                std::to_string(ps.first_line) + ")");
        }

        switch (r.basis) {
            case Basis::poisson_single:
                ps.fixed = at_line(lineno, [&] {
                    return ElementSeries::poisson_single(r.element, r.value, *r.sigma);
                });
                break;
            case Basis::summary:
                ps.fixed = at_line(lineno, [&] {
                    return ElementSeries::replicate(r.element, r.value, *r.sigma, *r.n);
                });
                break;
            case Basis::replicate_member:
                ps.replicates.push_back(r.value);
                break;
        }
    }
    if (!header_seen) throw ParseError(lineno == 0 ? 1 : lineno, "missing header row");

    Dataset d;
    d.provenance = std::move(provenance);
    d.specimens.reserve(pending.size());
    for (auto& p : pending) {
        for (auto& [element, ps] : p.series) {
            if (ps.basis == Basis::replicate_member) {
                p.head.series.emplace(element, at_line(ps.first_line, [&] {
                                          return replicate_summary(element, ps.replicates);
                                      }));
            } else {
                p.head.series.emplace(element, *ps.fixed);
            }
        }
        d.specimens.push_back(std::move(p.head));
    }
    return d;
}

Dataset parse_csv_text(std::string_view text, std::string provenance) {
    std::istringstream is{std::string(text)};
    return parse_csv(is, std::move(provenance));
}

Dataset load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return parse_csv(in, path);
}

namespace {

std::string shortest(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

std::string render_csv(const Dataset& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < kColumns.size(); ++i) os << (i ? "," : "") << kColumns[i];
    os << ",n\n";
    for (const auto& s : d.specimens) {
        for (const auto& [element, series] : s.series) {
            os << s.id << ',' << to_string(s.kind) << ',' << s.lot.value_or("") << ','
               << to_string(s.location) << ',' << to_string(element) << ',' << shortest(series.mean)
               << ',' << shortest(series.se) << ',';
            if (series.has_df())
                os << "summary," << series.n << '\n';
            else
                os << "poisson_single,\n";
        }
    }
    return os.str();
}

FixtureName parse_fixture_name(std::string_view name) {
    if (name == "table1") return FixtureName::table1;
    if (name == "table2") return FixtureName::table2;
    if (name == "table3") return FixtureName::table3;
    throw DomainError("unknown fixture '" + std::string(name) + "' (table1, table2, table3)");
}

std::string_view to_string(FixtureName name) {
    switch (name) {
        case FixtureName::table1: return "table1";
        case FixtureName::table2: return "table2";
        case FixtureName::table3: return "table3";
    }
    return "?";
}

namespace {

Specimen make_specimen(std::string id, SpecimenKind kind, std::optional<std::string> lot,
                       Location loc, std::initializer_list<ElementSeries> series) {
    Specimen s{std::move(id), kind, std::move(lot), loc, {}};
    for (const auto& e : series) s.series.emplace(e.element, e);
    return s;
}

Dataset table1() {
    using E = Element;
    const auto poisson = [](E e, double v, double sd) { return ElementSeries::poisson_single(e, v, sd); };
    Dataset d;
    d.provenance = "fixture:table1";
    d.specimens = {
        make_specimen("CE 399", SpecimenKind::bullet, std::nullopt, Location::unlabeled,
                      {poisson(E::Ag, 8.8, 0.5), poisson(E::Sb, 833, 9)}),
        make_specimen("CE 842", SpecimenKind::fragment, std::nullopt, Location::unlabeled,
                      {poisson(E::Ag, 9.8, 0.5), poisson(E::Sb, 797, 7)}),
        make_specimen("CE 567", SpecimenKind::fragment, std::nullopt, Location::unlabeled,
                      {poisson(E::Ag, 8.1, 0.6), poisson(E::Sb, 602, 4)}),
        make_specimen("CE 843", SpecimenKind::fragment, std::nullopt, Location::unlabeled,
                      {poisson(E::Ag, 7.9, 0.3), poisson(E::Sb, 621, 4)}),
        // Three fragments measured as replicates.
        make_specimen("CE 840", SpecimenKind::fragment, std::nullopt, Location::unlabeled,
                      {ElementSeries::replicate(E::Ag, 8.2, 0.4, 3),
                       ElementSeries::replicate(E::Sb, 642, 6, 3)}),
    };
    return d;
}

Dataset table2() {
    using E = Element;
    const auto rep = [](E e, double m, double se, int df) { return ElementSeries::replicate(e, m, se, df + 1); };
    const std::optional<std::string> lot = "6003";
    Dataset d;
    d.provenance = "fixture:table2";
    d.specimens = {
        make_specimen("6003/1 outer", SpecimenKind::bullet_section, lot, Location::outer,
                      {rep(E::Ag, 6.30, 0.13, 3), rep(E::Sb, 578, 9.75, 3)}),
        make_specimen("6003/1 middle", SpecimenKind::bullet_section, lot, Location::middle,
                      {rep(E::Ag, 6.66, 0.05, 2), rep(E::Sb, 585, 6.97, 2)}),
        make_specimen("6003/1 inner", SpecimenKind::bullet_section, lot, Location::inner,
                      {rep(E::Ag, 6.35, 0.14, 3), rep(E::Sb, 581, 7.56, 3)}),
        make_specimen("6003/1 whole", SpecimenKind::bullet, lot, Location::unlabeled,
                      {rep(E::Ag, 6.30, 0.06, 19), rep(E::Sb, 576, 3.47, 17)}),
    };
    return d;
}

Dataset table3() {
    struct Cell {
        double mean, pm;
        int n;
    };
    struct Row {
        int bullet;
        std::array<Cell, 4> sb;   // outer, middle, inner, whole
        std::array<Cell, 4> ag;
    };
    static constexpr std::array<Row, 4> rows{{
        {1, {{{578, 19.5, 4}, {585, 12.1, 3}, {581, 15.1, 4}, {576, 3.47, 18}}},
            {{{6.30, 0.26, 4}, {6.66, 0.09, 3}, {6.35, 0.27, 4}, {6.30, 0.06, 20}}}},
        {8, {{{957, 4.86, 3}, {952, 17.4, 3}, {963, 16.3, 3}, {966, 7.32, 12}}},
            {{{6.90, 0.14, 3}, {6.79, 0.16, 3}, {6.73, 0.18, 3}, {6.81, 0.04, 18}}}},
        {9, {{{1829, 61.4, 3}, {1806, 18.1, 3}, {1869, 13.4, 3}, {1834, 14.3, 9}}},
            {{{8.71, 0.38, 3}, {8.51, 0.28, 3}, {8.68, 0.42, 3}, {8.66, 0.08, 18}}}},
        {10, {{{260, 10.0, 3}, {262, 0.180, 3}, {258, 4.69, 3}, {260, 1.93, 9}}},
             {{{5.04, 0.25, 3}, {5.21, 0.09, 3}, {5.14, 0.16, 3}, {5.04, 0.05, 18}}}},
    }};
    static constexpr std::array<std::pair<std::string_view, Location>, 4> columns{{
        {"outer", Location::outer}, {"middle", Location::middle},
        {"inner", Location::inner}, {"whole", Location::unlabeled}}};

    Dataset d;
    d.provenance = "fixture:table3";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto& sb = row.sb[c];
            const auto& ag = row.ag[c];
            const bool whole = c == 3;
            d.specimens.push_back(make_specimen(
                "6003/" + std::to_string(row.bullet) + " " + std::string(columns[c].first),
                whole ? SpecimenKind::bullet : SpecimenKind::bullet_section, "6003", columns[c].second,
                {ElementSeries::replicate(Element::Sb, sb.mean, sb.pm, sb.n),
                 ElementSeries::replicate(Element::Ag, ag.mean, ag.pm, ag.n)}));
        }
    }
    return d;
}

}  // namespace

Dataset fixture(FixtureName name) {
    switch (name) {
        case FixtureName::table1: return table1();
        case FixtureName::table2: return table2();
        case FixtureName::table3: return table3();
    }
    throw DomainError("unknown fixture");
}

}  // namespace cabl
