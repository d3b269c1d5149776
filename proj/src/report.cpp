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

#include "cabl/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <iomanip>
#include <sstream>

namespace cabl {

namespace {

std::string shortest(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

Json optional_string(const std::optional<std::string>& s) {
    return s ? Json(*s) : Json(nullptr);
}

}  // namespace

Json to_json(const Interval& i) {
    return Json::array({i.lo, i.hi});
}

Json to_json(const ElementSeries& s) {
    Json j;
    j["element"] = std::string(to_string(s.element));
    j["mean"] = s.mean;
    j["se"] = s.se;
    j["df"] = s.df ? Json(*s.df) : Json(nullptr);
    j["n"] = s.n;
    return j;
}

Json to_json(const Specimen& s) {
    Json j;
    j["id"] = s.id;
    j["kind"] = std::string(to_string(s.kind));
    j["lot"] = optional_string(s.lot);
    j["location"] = std::string(to_string(s.location));
    Json series = Json::array();
    for (const auto& [e, ser] : s.series) series.push_back(to_json(ser));
    j["series"] = std::move(series);
    return j;
}

Json to_json(const Dataset& d) {
    Json j;
    j["provenance"] = d.provenance;
    Json specimens = Json::array();
    for (const auto& s : d.specimens) specimens.push_back(to_json(s));
    j["specimens"] = std::move(specimens);
    return j;
}

Json to_json(const MatchCriterion& c) {
    Json j;
    j["name"] = c.name;
    j["k"] = c.k;
    Json elements = Json::array();
    for (Element e : c.elements) elements.push_back(std::string(to_string(e)));
    j["elements"] = std::move(elements);
    j["boundary"] = std::string(to_string(c.boundary));
    Json bias = Json::object();
    for (const auto& [e, b] : c.bias) bias[std::string(to_string(e))] = Json::array({b.c_lo, b.c_hi});
    j["bias"] = std::move(bias);
    return j;
}

Json to_json(const ElementMatch& m) {
    Json j;
    j["matched"] = m.matched;
    j["overlap"] = m.overlap ? to_json(*m.overlap) : Json(nullptr);
    j["bias_used"] = m.bias_used ? Json::array({m.bias_used->first, m.bias_used->second}) : Json(nullptr);
    j["touching"] = m.touching;
    return j;
}

Json to_json(const MatchResult& r, const std::string& a_id, const std::string& b_id) {
    Json j;
    j["a"] = a_id;
    j["b"] = b_id;
    j["matched"] = r.matched;
    Json per = Json::object();
    for (const auto& [e, m] : r.per_element) per[std::string(to_string(e))] = to_json(m);
    j["per_element"] = std::move(per);
    return j;
}

Json to_json(const GroupingResult& g) {
    Json j;
    j["mode"] = std::string(to_string(g.mode));
    j["criterion"] = to_json(g.criterion);
    j["groups"] = g.groups;
    Json adjacency = Json::object();
    for (std::size_t i = 0; i < g.ids.size(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < g.ids.size(); ++k)
            if (k != i && g.match_matrix[i][k]) row.push_back(g.ids[k]);
        adjacency[g.ids[i]] = std::move(row);
    }
    j["adjacency"] = std::move(adjacency);
    Json triples = Json::array();
    for (const auto& t : g.nontransitive_triples) triples.push_back(Json::array({t[0], t[1], t[2]}));
    j["nontransitive_triples"] = std::move(triples);
    Json touching = Json::array();
    for (const auto& [a, b] : g.touching_pairs) touching.push_back(Json::array({a, b}));
    j["touching_pairs"] = std::move(touching);
    j["groups_overlap"] = g.groups_overlap;
    return j;
}

Json to_json(const BoxMatchRate& r) {
    Json j;
    j["pairs_total"] = r.pairs_total;
    j["pairs_matched"] = r.pairs_matched;
    j["rate"] = r.rate;
    return j;
}

Json to_json(const EvidenceResult& r) {
    Json j;
    j["p_given_T"] = r.p_given_T;
    j["p_given_notT"] = r.p_given_notT;
    j["likelihood_ratio"] = r.likelihood_ratio;
    j["posterior_odds"] = r.posterior_odds ? Json(*r.posterior_odds) : Json(nullptr);
    Json exact = Json::object();
    if (r.p_given_T_exact) exact["p_given_T"] = *r.p_given_T_exact;
    if (r.p_given_notT_exact) exact["p_given_notT"] = *r.p_given_notT_exact;
    if (r.likelihood_ratio_exact) exact["likelihood_ratio"] = *r.likelihood_ratio_exact;
    j["exact"] = std::move(exact);
    return j;
}

Json to_json(const EquivalenceResult& r) {
    Json j;
    j["diff"] = r.diff;
    j["se"] = r.se;
    j["df"] = r.df;
    j["t_lower"] = r.t_lower;
    j["t_upper"] = r.t_upper;
    j["p"] = r.p;
    j["equivalent"] = r.equivalent;
    return j;
}

Json to_json(const stats::TTestResult& r) {
    Json j;
    j["t"] = r.t;
    j["df"] = r.df;
    j["p_two_sided"] = r.p_two_sided;
    return j;
}

namespace {

Json effect_json(const stats::EffectTest& t) {
    Json j;
    j["effect"] = t.effect;
    j["df_hypothesis"] = t.df_hypothesis;
    j["wilks_lambda"] = t.wilks_lambda;
    j["wilks_f"] = t.wilks_f;
    j["wilks_df"] = Json::array({t.wilks_df1, t.wilks_df2});
    j["wilks_p"] = t.wilks_p;
    j["hotelling_lawley"] = t.hotelling_lawley;
    j["hl_f"] = t.hl_f;
    j["hl_df"] = Json::array({t.hl_df1, t.hl_df2});
    j["hl_p"] = t.hl_p;
    return j;
}

}  // namespace

Json to_json(const stats::ManovaResult& r) {
    Json j;
    j["responses"] = r.responses;
    j["observations"] = r.observations;
    j["error_df"] = r.error_df;
    j["bullet_levels"] = r.bullet_levels;
    j["location_levels"] = r.location_levels;
    j["effects"] = Json::array({effect_json(r.bullet), effect_json(r.location), effect_json(r.interaction)});
    return j;
}

Json to_json(const stats::FitReport& r) {
    Json j;
    j["family"] = std::string(stats::to_string(r.family));
    Json params = Json::object();
    for (const auto& [name, v] : r.params) params[name] = v;
    j["params"] = std::move(params);
    if (r.ok) {
        j["stat"] = r.gof_stat;
        j["df"] = r.gof_df;
        j["p"] = r.p_value;
    } else {
        j["failed"] = r.failure;
    }
    return j;
}

Json decisions_block(const MatchCriterion& c, const std::string& provenance) {
    Json j;
    j["boundary"] = std::string(to_string(c.boundary)) +
                    (c.boundary == Boundary::closed ? " (touching intervals match)"
                                                    : " (touching intervals do not match)");
    j["touch_tolerance_relative"] = kTouchTolerance;
    Json bias = Json::object();
    for (const auto& [e, b] : c.bias)
        bias[std::string(to_string(e))] = "+" + shortest(b.c_lo * 100) + "% to +" + shortest(b.c_hi * 100) +
                                          "% applied to the first specimen of each pair";
    j["bias"] = std::move(bias);
    j["uncertainty"] = "± values are standard errors of the mean; single Poisson-counted "
                       "observations carry no degrees of freedom";
    if (provenance == "fixture:table3")
        j["table_semantics"] = "table3 ± values are stored as printed; they behave like standard "
                               "deviations and disagree with table2 for the same fragments";
    else if (provenance == "fixture:table2")
        j["table_semantics"] = "table2 ± values read as standard errors with the printed df";
    return j;
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

std::string format_series(const ElementSeries& s) {
    return shortest(s.mean) + " ± " + shortest(s.se);
}

std::string render_dataset_table(const Dataset& d, const std::vector<Element>& elements) {
    std::size_t id_width = 8;
    for (const auto& s : d.specimens) id_width = std::max(id_width, s.id.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(id_width) + 2) << "Specimen";
    for (Element e : elements) os << std::setw(18) << (std::string(to_string(e)) + ", ppm") << std::setw(6) << "n";
    os << '\n';
    for (const auto& s : d.specimens) {
        os << std::setw(static_cast<int>(id_width) + 2) << s.id;
        for (Element e : elements) {
            const ElementSeries* ser = s.find(e);
            // "±" is two bytes in UTF-8; pad by one extra column.
            os << std::setw(19) << (ser ? format_series(*ser) : "-")
               << std::setw(6) << (ser ? std::to_string(ser->n) : "-");
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace cabl
