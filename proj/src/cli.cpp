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

#include "cabl/cli.hpp"

#include "cabl/errors.hpp"
#include "cabl/evidence.hpp"
#include "cabl/grouping.hpp"
#include "cabl/ingest.hpp"
#include "cabl/matching.hpp"
#include "cabl/report.hpp"
#include "cabl/stats/distfit.hpp"
#include "cabl/stats/manova.hpp"
#include "cabl/stats/t_test.hpp"
#include "cabl/uncertainty.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace cabl::cli {

namespace {

enum class Format { json, text };

struct InputOptions {
    std::string fixture;
    std::string input;
};

struct CriterionOptions {
    std::string preset;
    std::optional<double> k;
    std::string elements;
    std::string boundary;
    bool bias_on = false;
    bool bias_off = false;
};

// Settings read from --config.
struct FileConfig {
    std::optional<MatchCriterion> criterion;
    std::optional<BiasTable> bias;
    std::optional<AttenuationTable> attenuation;
};

struct RunConfig {
    Format format = Format::text;
    std::string config_path;
    FileConfig file;
};

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

BiasTable bias_from_json(const Json& j) {
    BiasTable table;
    for (const auto& [symbol, range] : j.items()) {
        const Element e = parse_element(symbol);
        if (!range.is_array() || range.size() != 2 || !range[0].is_number() || !range[1].is_number())
            throw ValidationError("bias entry for " + symbol + " must be [c_lo, c_hi]");
        table.emplace(e, BiasCorrection::make(e, range[0].get<double>(), range[1].get<double>()));
    }
    return table;
}

FileConfig load_config(const std::string& path) {
    FileConfig cfg;
    const Json j = read_json_file(path);
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    const auto base = std::filesystem::path(path).parent_path();
    if (j.contains("criterion")) {
        const Json& c = j["criterion"];
        MatchCriterion crit;
        if (c.is_string()) {
            crit = MatchCriterion::preset(c.get<std::string>());
        } else if (c.is_object()) {
            crit = MatchCriterion::preset(c.value("preset", std::string("guinn4")));
            if (c.contains("k")) crit.k = c["k"].get<double>();
            if (c.contains("elements")) {
                const Json& el = c["elements"];
                if (el.is_string()) {
                    crit.elements = parse_element_list(el.get<std::string>());
                } else {
                    crit.elements.clear();
                    for (const auto& s : el) crit.elements.push_back(parse_element(s.get<std::string>()));
                }
            }
            if (c.contains("boundary")) crit.boundary = parse_boundary(c["boundary"].get<std::string>());
            crit.name = "config";
        } else {
            throw ValidationError("config 'criterion' must be a preset name or an object");
        }
        crit.validate();
        cfg.criterion = crit;
    }
    if (j.contains("bias")) cfg.bias = bias_from_json(j["bias"]);
    if (j.contains("attenuation_csv")) {
        auto p = std::filesystem::path(j["attenuation_csv"].get<std::string>());
        if (p.is_relative()) p = base / p;
        std::ifstream in(p);
        if (!in) throw ValidationError("cannot open attenuation table '" + p.string() + "'");
        cfg.attenuation = parse_attenuation_csv(in);
    } else if (j.contains("attenuation")) {
        std::vector<AttenuationEntry> entries;
        for (const auto& row : j["attenuation"])
            entries.push_back({row.at("energy_kev").get<double>(), row.at("mu_linear_per_cm").get<double>()});
        cfg.attenuation = AttenuationTable(std::move(entries));
    }
    return cfg;
}

void add_input_options(CLI::App* cmd, InputOptions& in, const std::string& prefix = "") {
    auto* f = cmd->add_option("--" + prefix + "fixture", in.fixture, "embedded table: table1, table2, table3");
    auto* i = cmd->add_option("--" + prefix + "input", in.input, "measurement CSV file");
    f->excludes(i);
}

Dataset load_input(const InputOptions& in, bool required = true) {
    if (!in.fixture.empty()) return fixture(parse_fixture_name(in.fixture));
    if (!in.input.empty()) {
        if (!std::filesystem::exists(in.input)) throw ValidationError("no such file '" + in.input + "'");
        return load_csv_file(in.input);
    }
    if (required) throw ValidationError("exactly one of --fixture or --input is required");
    return {};
}

void add_criterion_options(CLI::App* cmd, CriterionOptions& c) {
    cmd->add_option("--criterion", c.preset, "preset: guinn4 (default) or nrc2");
    cmd->add_option("--k", c.k, "interval multiplier (standard errors)");
    cmd->add_option("--elements", c.elements, "element panel, e.g. Sb,Ag");
    cmd->add_option("--boundary", c.boundary, "closed (default) or open");
    auto* on = cmd->add_flag("--bias", c.bias_on, "apply the bias table to the first specimen");
    auto* off = cmd->add_flag("--no-bias", c.bias_off, "ignore bias corrections");
    on->excludes(off);
}

MatchCriterion build_criterion(const CriterionOptions& o, const RunConfig& rc) {
    MatchCriterion c;
    if (!o.preset.empty())
        c = MatchCriterion::preset(o.preset);
    else if (rc.file.criterion)
        c = *rc.file.criterion;
    else
        c = MatchCriterion::guinn4();
    if (o.k) c.k = *o.k;
    if (!o.elements.empty()) c.elements = parse_element_list(o.elements);
    if (!o.boundary.empty()) c.boundary = parse_boundary(o.boundary);
    const bool want_bias = o.bias_on || (!o.bias_off && !c.bias.empty());
    c.bias.clear();
    if (want_bias) {
        const BiasTable table = rc.file.bias ? *rc.file.bias : default_bias_table();
        for (Element e : c.elements) {
            const auto it = table.find(e);
            if (it != table.end()) c.bias.emplace(e, it->second);
        }
    }
    if (o.k || !o.elements.empty() || !o.boundary.empty() || o.bias_on || o.bias_off) {
        if (c.name == "guinn4" || c.name == "nrc2") c.name += "+overrides";
    }
    c.validate();
    return c;
}

void emit(std::ostream& out, Format f, const Json& j, const std::string& text) {
    if (f == Format::json)
        out << dump(j);
    else
        out << text;
}

std::string describe(const ElementMatch& m, Element e) {
    std::ostringstream os;
    os << to_string(e) << (m.matched ? " ok" : " no");
    if (m.overlap) os << " [" << fmt(m.overlap->lo) << ", " << fmt(m.overlap->hi) << "]";
    if (m.touching) os << " (touching)";
    return os.str();
}

std::string criterion_line(const MatchCriterion& c) {
    std::ostringstream os;
    os << "criterion " << c.name << ": k=" << fmt(c.k) << ", elements=";
    for (std::size_t i = 0; i < c.elements.size(); ++i) os << (i ? "," : "") << to_string(c.elements[i]);
    os << ", boundary=" << to_string(c.boundary);
    if (!c.bias.empty()) {
        os << ", bias on first specimen:";
        for (const auto& [e, b] : c.bias)
            os << ' ' << to_string(e) << " [" << fmt(b.c_lo * 100) << "%, " << fmt(b.c_hi * 100) << "%]";
    }
    return os.str();
}

int cmd_match(const InputOptions& in, const InputOptions& against, const CriterionOptions& co,
              const RunConfig& rc, std::ostream& out) {
    const Dataset a = load_input(in);
    const Dataset b = load_input(against, false);
    const bool cross = !against.fixture.empty() || !against.input.empty();
    const MatchCriterion crit = build_criterion(co, rc);

    Json pairs = Json::array();
    std::ostringstream text;
    text << criterion_line(crit) << '\n';
    std::size_t matched = 0;
    const auto record = [&](const Specimen& x, const Specimen& y) {
        const MatchResult r = match_specimens(x, y, crit);
        if (r.matched) ++matched;
        pairs.push_back(to_json(r, x.id, y.id));
        text << x.id << " vs " << y.id << ": " << (r.matched ? "MATCH" : "no match") << " (";
        bool first = true;
        for (const auto& [e, m] : r.per_element) {
            text << (first ? "" : "; ") << describe(m, e);
            first = false;
        }
        text << ")\n";
    };
    if (cross) {
        for (const auto& x : a.specimens)
            for (const auto& y : b.specimens) record(x, y);
    } else {
        for (std::size_t i = 0; i < a.specimens.size(); ++i)
            for (std::size_t j = i + 1; j < a.specimens.size(); ++j) record(a.specimens[i], a.specimens[j]);
    }
    text << pairs.size() << " pairs, " << matched << " matched\n";

    Json j;
    j["command"] = "match";
    j["input"] = a.provenance;
    if (cross) j["against"] = b.provenance;
    j["criterion"] = to_json(crit);
    j["pairs"] = std::move(pairs);
    j["summary"] = {{"pairs", j["pairs"].size()}, {"matched", matched}};
    j["decisions"] = decisions_block(crit, a.provenance);
    emit(out, rc.format, j, text.str());
    return kOk;
}

std::string grouping_text(const GroupingResult& g) {
    std::ostringstream os;
    os << criterion_line(g.criterion) << '\n';
    os << "mode: " << to_string(g.mode) << '\n';
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
        os << "group " << (i + 1) << ": {";
        for (std::size_t k = 0; k < g.groups[i].size(); ++k) os << (k ? ", " : "") << g.groups[i][k];
        os << "}\n";
    }
    if (g.groups_overlap) os << "note: groups overlap (the match relation is not transitive)\n";
    for (const auto& t : g.nontransitive_triples)
        os << "nontransitive: " << t[0] << " ~ " << t[1] << " ~ " << t[2] << " but " << t[0] << " !~ " << t[2]
           << '\n';
    for (const auto& [a, b] : g.touching_pairs)
        os << "exact touch: " << a << " / " << b << " (decision depends on the boundary convention)\n";
    return os.str();
}

int cmd_group(const InputOptions& in, const CriterionOptions& co, const std::string& mode,
              const RunConfig& rc, std::ostream& out) {
    const Dataset d = load_input(in);
    if (d.empty()) throw ValidationError("dataset '" + d.provenance + "' has no specimens");
    const MatchCriterion crit = build_criterion(co, rc);
    const GroupingResult g = group(d, crit, parse_grouping_mode(mode.empty() ? "cc" : mode));
    Json j;
    j["command"] = "group";
    j["input"] = d.provenance;
    j["result"] = to_json(g);
    j["decisions"] = decisions_block(g.criterion, d.provenance);
    emit(out, rc.format, j, grouping_text(g));
    return kOk;
}

struct EvidenceOptions {
    std::string box;
    int draws_t = 2;
    int draws_not_t = 3;
    int groups_observed = 2;
    std::optional<double> prior_odds;
};

int cmd_evidence(const EvidenceOptions& o, const RunConfig& rc, std::ostream& out) {
    const BoxModel box = BoxModel::parse(o.box);
    EvidenceResult r = likelihood_ratio(box, o.groups_observed, o.draws_t, o.draws_not_t);
    if (o.prior_odds) r = with_prior(r, *o.prior_odds);
    std::ostringstream text;
    text << "box: " << o.box << " (" << box.total() << " cartridges, " << box.group_count() << " groups)\n";
    text << "Pr(E|T)    = " << fmt(r.p_given_T) << (r.p_given_T_exact ? "  (" + *r.p_given_T_exact + ")" : "")
         << "   [" << o.draws_t << " bullets span >= " << o.groups_observed << " groups]\n";
    text << "Pr(E|notT) = " << fmt(r.p_given_notT)
         << (r.p_given_notT_exact ? "  (" + *r.p_given_notT_exact + ")" : "") << "   [" << o.draws_not_t
         << " bullets]\n";
    text << "likelihood ratio = " << fmt(r.likelihood_ratio)
         << (r.likelihood_ratio_exact ? "  (" + *r.likelihood_ratio_exact + ")" : "") << '\n';
    if (r.posterior_odds) text << "posterior odds = " << fmt(*r.posterior_odds) << '\n';

    Json j;
    j["command"] = "evidence";
    j["box"] = box.group_sizes();
    j["groups_observed"] = o.groups_observed;
    j["draws_T"] = o.draws_t;
    j["draws_notT"] = o.draws_not_t;
    j["result"] = to_json(r);
    j["decisions"] = {{"model", "no measurement error, no heterogeneity; bullets drawn uniformly without "
                                "replacement; E = at least groups_observed distinct groups"}};
    emit(out, rc.format, j, text.str());
    return kOk;
}

struct HeteroOptions {
    InputOptions in;
    std::string element = "Ag";
    std::string locations = "outer,middle";
    std::string bullet;
    bool manova = false;
    std::string observations;
    bool log = false;
};

std::vector<stats::FactorialObservation> read_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    std::vector<stats::FactorialObservation> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (width == 0) {
            if (f.size() < 3 || f[0] != "bullet" || f[1] != "location")
                throw ParseError(lineno, "header must be bullet,location,<response>...");
            width = f.size();
            continue;
        }
        if (f.size() != width) throw ParseError(lineno, "expected " + std::to_string(width) + " fields");
        stats::FactorialObservation o{f[0], f[1], {}};
        for (std::size_t k = 2; k < f.size(); ++k) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f[k].data(), f[k].data() + f[k].size(), v);
            if (ec != std::errc{} || ptr != f[k].data() + f[k].size())
                throw ParseError(lineno, "not a number: '" + f[k] + "'");
            o.responses.push_back(v);
        }
        out.push_back(std::move(o));
    }
    if (width == 0) throw ParseError(1, "missing header");
    return out;
}

int cmd_hetero(const HeteroOptions& o, const RunConfig& rc, std::ostream& out) {
    if (o.manova) {
        if (o.observations.empty()) throw ValidationError("--manova needs --observations <csv>");
        auto data = read_observations(o.observations);
        if (o.log) data = stats::log_responses(data);
        const stats::ManovaResult r = stats::manova_two_way(data);
        std::ostringstream text;
        text << "two-way MANOVA, " << r.responses << " responses, " << r.observations << " observations, error df "
             << r.error_df << (o.log ? " (natural-log responses)" : "") << '\n';
        for (const auto* e : {&r.bullet, &r.location, &r.interaction}) {
            text << std::left << std::setw(16) << e->effect << " Wilks " << fmt(e->wilks_lambda) << "  F("
                 << fmt(e->wilks_df1) << ", " << fmt(e->wilks_df2) << ") = " << fmt(e->wilks_f)
                 << "  p = " << fmt(e->wilks_p) << " | Hotelling-Lawley " << fmt(e->hotelling_lawley)
                 << "  p = " << fmt(e->hl_p) << '\n';
        }
        Json j;
        j["command"] = "hetero";
        j["test"] = "manova_two_way";
        j["log_transform"] = o.log;
        j["result"] = to_json(r);
        emit(out, rc.format, j, text.str());
        return kOk;
    }

    const Dataset d = load_input(o.in);
    const Element element = parse_element(o.element);
    const auto locs = split_list(o.locations);
    if (locs.size() != 2) throw ValidationError("--locations needs exactly two locations, e.g. outer,middle");
    std::vector<const Specimen*> picked;
    for (const auto& name : locs) {
        const bool whole = name == "whole" || name == "combined";
        const Location loc = whole ? Location::unlabeled : parse_location(name);
        const Specimen* found = nullptr;
        for (const auto& s : d.specimens) {
            if (s.location != loc) continue;
            if (!o.bullet.empty() && s.id.rfind(o.bullet, 0) != 0) continue;
            if (found) throw ValidationError("location '" + name + "' matches several specimens; use --bullet");
            found = &s;
        }
        if (!found) throw ValidationError("no specimen at location '" + name + "'");
        picked.push_back(found);
    }
    const ElementSeries& sa = picked[0]->at(element);
    const ElementSeries& sb = picked[1]->at(element);
    if (!sa.has_df() || !sb.has_df())
        throw NoDegreesOfFreedomError("pooled t-test needs replicate-based series");
    const stats::TwoSampleInput a{sa.mean, sa.se, sa.n, picked[0]->id};
    const stats::TwoSampleInput b{sb.mean, sb.se, sb.n, picked[1]->id};
    const stats::TTestResult r = stats::pooled_t_test(a, b);

    std::ostringstream text;
    text << "pooled t-test, " << to_string(element) << ": " << a.label << " (" << format_series(sa) << ", n=" << a.n
         << ") vs " << b.label << " (" << format_series(sb) << ", n=" << b.n << ")\n";
    text << "t = " << fmt(r.t) << ", df = " << r.df << ", two-sided p = " << fmt(r.p_two_sided) << '\n';
    Json j;
    j["command"] = "hetero";
    j["test"] = "pooled_t";
    j["element"] = std::string(to_string(element));
    j["a"] = {{"id", a.label}, {"series", to_json(sa)}};
    j["b"] = {{"id", b.label}, {"series", to_json(sb)}};
    j["result"] = to_json(r);
    j["decisions"] = {{"se_to_sd", "sd = se * sqrt(n); ± values read as standard errors"}};
    emit(out, rc.format, j, text.str());
    return kOk;
}

std::vector<double> read_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::vector<double> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto comma = line.find(',');
        std::string field = line.substr(0, comma);
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        while (!field.empty() && field.back() == ' ') field.pop_back();
        if (field.empty()) continue;
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            if (v.empty() && lineno == 1) continue;   // header
            throw ParseError(lineno, "not a number: '" + field + "'");
        }
        v.push_back(x);
    }
    return v;
}

int cmd_distfit(const std::string& input, const std::string& families, const RunConfig& rc, std::ostream& out) {
    if (input.empty()) throw ValidationError("--input is required");
    const std::vector<double> data = read_values(input);
    const auto fams = stats::parse_family_list(families.empty() ? "all" : families);
    const auto reports = stats::rank_families(data, fams);
    std::ostringstream text;
    text << "n = " << data.size() << "; chi-squared goodness of fit on equal-probability bins\n";
    int rank = 0;
    for (const auto& r : reports) {
        text << std::left << std::setw(4) << (r.ok ? std::to_string(++rank) : "-") << std::setw(13)
             << stats::to_string(r.family);
        if (r.ok) {
            text << "p = " << std::setw(10) << fmt(r.p_value, 4) << "stat = " << std::setw(10) << fmt(r.gof_stat, 5)
                 << "df = " << r.gof_df << "  ";
            for (const auto& [name, v] : r.params) text << name << '=' << fmt(v) << ' ';
        } else {
            text << "failed: " << r.failure;
        }
        text << '\n';
    }
    Json j;
    j["command"] = "distfit";
    j["n"] = data.size();
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    j["ranking"] = std::move(arr);
    j["decisions"] = {{"binning", "equal-probability bins, max(5, floor(n/5)); df = bins - 1 - parameters"}};
    emit(out, rc.format, j, text.str());
    return kOk;
}

struct ScheduleOptions {
    std::string half_life, ti, td, tc;
};

DecaySchedule schedule_from(const ScheduleOptions& s) {
    if (s.half_life.empty() || s.ti.empty() || s.td.empty() || s.tc.empty())
        throw ValidationError("--half-life, --ti, --td and --tc are required");
    DecaySchedule d{parse_duration(s.half_life), parse_duration(s.ti), parse_duration(s.td), parse_duration(s.tc)};
    d.validate();
    return d;
}

void add_schedule_options(CLI::App* cmd, ScheduleOptions& s) {
    cmd->add_option("--half-life", s.half_life, "half-life, e.g. 24s, 26.4h, 2.70d");
    cmd->add_option("--ti", s.ti, "irradiation time (seconds or with unit)");
    cmd->add_option("--td", s.td, "decay time before counting");
    cmd->add_option("--tc", s.tc, "count time");
}

}  // namespace

double parse_duration(const std::string& text) {
    std::string_view sv(text);
    while (!sv.empty() && sv.back() == ' ') sv.remove_suffix(1);
    double scale = 1.0;
    if (sv == "inf") return HUGE_VAL;
    if (!sv.empty()) {
        switch (sv.back()) {
            case 's': scale = 1.0; sv.remove_suffix(1); break;
            case 'm': scale = 60.0; sv.remove_suffix(1); break;
            case 'h': scale = 3600.0; sv.remove_suffix(1); break;
            case 'd': scale = 86400.0; sv.remove_suffix(1); break;
            default: break;
        }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (sv.empty() || ec != std::errc{} || ptr != sv.data() + sv.size())
        throw DomainError("not a duration: '" + text + "'");
    return v * scale;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Comparative bullet lead analysis: matching, grouping, evidence, heterogeneity, "
                 "distribution fitting and NAA reduction",
                 "cabl"};
    app.require_subcommand(1);
    std::string format = "text";
    std::string config;
    app.add_option("--format", format, "output format: text (default) or json")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--config", config, "JSON config: criterion, bias table, attenuation table");
    app.fallthrough();

    InputOptions match_in, match_against;
    CriterionOptions match_crit;
    auto* match = app.add_subcommand("match", "pairwise match results");
    add_input_options(match, match_in);
    add_input_options(match, match_against, "against-");
    add_criterion_options(match, match_crit);

    InputOptions group_in;
    CriterionOptions group_crit;
    std::string group_mode;
    auto* grp = app.add_subcommand("group", "compositional groups from the match relation");
    add_input_options(grp, group_in);
    add_criterion_options(grp, group_crit);
    grp->add_option("--mode", group_mode, "cc (connected components, default) or clique");

    EvidenceOptions ev;
    auto* evidence = app.add_subcommand("evidence", "hypergeometric likelihood ratio for bullet counts");
    evidence->add_option("--box", ev.box, "group sizes within the box, e.g. 6,4")->required();
    evidence->add_option("--draws-t", ev.draws_t, "bullets under hypothesis T (default 2)");
    evidence->add_option("--draws-not-t", ev.draws_not_t, "bullets under the alternative (default 3)");
    evidence->add_option("--groups-observed", ev.groups_observed, "distinct groups observed (default 2)");
    evidence->add_option("--prior-odds", ev.prior_odds, "prior odds Pr(T)/Pr(not T)");

    HeteroOptions het;
    auto* hetero = app.add_subcommand("hetero", "within-bullet heterogeneity tests");
    add_input_options(hetero, het.in);
    hetero->add_option("--element", het.element, "element for the t-test (default Ag)");
    hetero->add_option("--locations", het.locations, "two locations, e.g. outer,middle");
    hetero->add_option("--bullet", het.bullet, "specimen id prefix selecting one bullet");
    hetero->add_flag("--manova", het.manova, "two-way MANOVA on --observations");
    hetero->add_option("--observations", het.observations, "CSV: bullet,location,<response>...");
    hetero->add_flag("--log", het.log, "natural-log transform responses");

    std::string dist_input, dist_families = "all";
    auto* distfit = app.add_subcommand("distfit", "rank distribution families by chi-squared GOF p-value");
    distfit->add_option("--input", dist_input, "file with one value per line (first column)");
    distfit->add_option("--families", dist_families, "all, or a comma list");

    auto* naa = app.add_subcommand("naa", "NAA measurement reduction");
    naa->require_subcommand(1);
    ScheduleOptions decay_s;
    auto* naa_decay = naa->add_subcommand("decay", "activate-decay-count factor");
    add_schedule_options(naa_decay, decay_s);
    std::uint64_t counts = 0;
    auto* naa_sigma = naa->add_subcommand("sigma", "Poisson sigma of a gross count");
    naa_sigma->add_option("--counts", counts, "gross counts")->required();
    ScheduleOptions conc_s;
    ComparatorInput conc;
    std::string std_td;
    auto* naa_conc = naa->add_subcommand("concentration", "comparator-method concentration (ppm)");
    add_schedule_options(naa_conc, conc_s);
    naa_conc->add_option("--sample-counts", conc.sample_counts)->required();
    naa_conc->add_option("--sample-mass-mg", conc.sample_mass_mg)->required();
    naa_conc->add_option("--std-counts", conc.std_counts)->required();
    naa_conc->add_option("--std-mass-ug", conc.std_mass_ug)->required();
    naa_conc->add_option("--std-td", std_td, "decay time of the standard (default: same as sample)");
    double dimension_mm = 0.4;
    std::string energies = "559,564,657";
    std::string attenuation_csv;
    auto* naa_self = naa->add_subcommand("selfabs", "gamma self-absorption loss in lead");
    naa_self->add_option("--dimension-mm", dimension_mm, "mean maximum linear dimension (default 0.4)");
    naa_self->add_option("--energies", energies, "gamma energies in keV (default 559,564,657)");
    naa_self->add_option("--attenuation", attenuation_csv, "attenuation CSV: energy_kev,mu_linear_per_cm");

    InputOptions report_in;
    CriterionOptions report_crit;
    std::string report_mode;
    auto* report = app.add_subcommand("report", "dataset table, matches, groups and within-lot match rate");
    add_input_options(report, report_in);
    add_criterion_options(report, report_crit);
    report->add_option("--mode", report_mode, "cc (default) or clique");

    std::vector<std::string> argv_store{"cabl"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        RunConfig rc;
        rc.format = format == "json" ? Format::json : Format::text;
        if (!config.empty()) rc.file = load_config(config);

        if (*match) return cmd_match(match_in, match_against, match_crit, rc, out);
        if (*grp) return cmd_group(group_in, group_crit, group_mode, rc, out);
        if (*evidence) return cmd_evidence(ev, rc, out);
        if (*hetero) return cmd_hetero(het, rc, out);
        if (*distfit) return cmd_distfit(dist_input, dist_families, rc, out);
        if (*naa_decay) {
            const DecaySchedule s = schedule_from(decay_s);
            const double f = decay_factor(s);
            Json j{{"command", "naa decay"},
                   {"schedule", {{"half_life_s", s.half_life}, {"t_irradiate_s", s.t_irradiate},
                                 {"t_decay_s", s.t_decay}, {"t_count_s", s.t_count}}},
                   {"decay_factor_s", f}};
            emit(out, rc.format, j, "decay factor = " + fmt(f, 8) + " s\n");
            return kOk;
        }
        if (*naa_sigma) {
            const double s = poisson_sigma(counts);
            Json j{{"command", "naa sigma"}, {"counts", counts}, {"sigma", s}};
            emit(out, rc.format, j, "sigma = " + fmt(s, 8) + " counts\n");
            return kOk;
        }
        if (*naa_conc) {
            conc.sample_schedule = schedule_from(conc_s);
            conc.std_schedule = conc.sample_schedule;
            if (!std_td.empty()) conc.std_schedule.t_decay = parse_duration(std_td);
            const double ppm = comparator_concentration(conc);
            Json j{{"command", "naa concentration"}, {"concentration_ppm", ppm},
                   {"decisions", {{"flux", "common to sample and standard; cancels"}}}};
            emit(out, rc.format, j, "concentration = " + fmt(ppm, 8) + " ppm\n");
            return kOk;
        }
        if (*naa_self) {
            AttenuationTable table = rc.file.attenuation ? *rc.file.attenuation : default_lead_attenuation();
            if (!attenuation_csv.empty()) {
                std::ifstream in(attenuation_csv);
                if (!in) throw ValidationError("cannot open '" + attenuation_csv + "'");
                table = parse_attenuation_csv(in);
            }
            Json rows = Json::array();
            std::ostringstream text;
            double sum = 0.0;
            const auto list = split_list(energies);
            if (list.empty()) throw ValidationError("--energies is empty");
            for (const auto& e : list) {
                const double kev = parse_duration(e);   // plain number
                const AttenuationEntry entry = table.entry_at(kev);
                const double loss = self_absorption_loss(dimension_mm, entry);
                sum += loss;
                rows.push_back({{"energy_kev", kev}, {"mu_linear_per_cm", entry.mu_linear_per_cm}, {"loss", loss}});
                text << fmt(kev) << " keV: mu = " << fmt(entry.mu_linear_per_cm, 5) << " /cm, loss = "
                     << fmt(loss * 100, 4) << "%\n";
            }
            const double avg = sum / static_cast<double>(list.size());
            text << "average loss = " << fmt(avg * 100, 4) << "% at " << fmt(dimension_mm) << " mm\n";
            Json j{{"command", "naa selfabs"}, {"dimension_mm", dimension_mm}, {"energies", rows},
                   {"average_loss", avg},
                   {"decisions", {{"path", "effective path = half the mean maximum dimension"}}}};
            emit(out, rc.format, j, text.str());
            return kOk;
        }
        if (*report) {
            const Dataset d = load_input(report_in);
            if (d.empty()) throw ValidationError("dataset '" + d.provenance + "' has no specimens");
            const MatchCriterion crit = build_criterion(report_crit, rc);
            const GroupingResult g = group(d, crit, parse_grouping_mode(report_mode.empty() ? "cc" : report_mode));
            const BoxMatchRate rate = within_box_match_rate(d, crit);
            std::ostringstream text;
            text << "source: " << d.provenance << "\n\n" << render_dataset_table(d, crit.elements) << '\n'
                 << grouping_text(g) << "within-lot pairs matched: " << rate.pairs_matched << " of "
                 << rate.pairs_total << '\n';
            Json j;
            j["command"] = "report";
            j["dataset"] = to_json(d);
            j["grouping"] = to_json(g);
            j["within_lot"] = to_json(rate);
            j["decisions"] = decisions_block(g.criterion, d.provenance);
            emit(out, rc.format, j, text.str());
            return kOk;
        }
        err << app.help();
        return kUsageError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const Json::exception& e) {
        err << "error: config: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kNumericFailure;
    }
}

}  // namespace cabl::cli
