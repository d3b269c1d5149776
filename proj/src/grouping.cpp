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

#include "cabl/grouping.hpp"

#include "cabl/errors.hpp"
#include "cabl/matching.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cabl {

std::string_view to_string(GroupingMode mode) {
    return mode == GroupingMode::connected_components ? "connected_components" : "maximal_cliques";
}

GroupingMode parse_grouping_mode(std::string_view text) {
    if (text == "cc" || text == "connected_components") return GroupingMode::connected_components;
    if (text == "clique" || text == "cliques" || text == "maximal_cliques")
        return GroupingMode::maximal_cliques;
    throw DomainError("grouping mode must be 'cc' or 'clique', got '" + std::string(text) + "'");
}

namespace {

using Matrix = std::vector<std::vector<bool>>;

std::vector<std::vector<std::size_t>> components(const Matrix& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j]) parent[root(i)] = root(j);

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = root(i);
        if (slot[r] == n) {
            slot[r] = out.size();
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

// Bron-Kerbosch with pivoting.
void bron_kerbosch(const Matrix& m, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x, std::vector<std::vector<std::size_t>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    std::size_t pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
        for (std::size_t u : *set) {
            const auto deg = static_cast<std::size_t>(
                std::count_if(p.begin(), p.end(), [&](std::size_t v) { return v != u && m[u][v]; }));
            if (deg >= best) {
                best = deg;
                pivot = u;
            }
        }
    }
    std::vector<std::size_t> candidates;
    for (std::size_t v : p)
        if (v == pivot || !m[pivot][v]) candidates.push_back(v);   // diagonal is true
    for (std::size_t v : candidates) {
        std::vector<std::size_t> p2, x2;
        for (std::size_t w : p)
            if (w != v && m[v][w]) p2.push_back(w);
        for (std::size_t w : x)
            if (m[v][w]) x2.push_back(w);
        r.push_back(v);
        bron_kerbosch(m, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

std::vector<std::vector<std::string>> to_sorted_groups(const std::vector<std::vector<std::size_t>>& idx,
                                                       const std::vector<std::string>& ids) {
    std::vector<std::vector<std::string>> groups;
    for (const auto& g : idx) {
        std::vector<std::string> names;
        for (std::size_t i : g) names.push_back(ids[i]);
        std::sort(names.begin(), names.end());
        groups.push_back(std::move(names));
    }
    std::sort(groups.begin(), groups.end());
    return groups;
}

}  // namespace

GroupingResult group(const Dataset& dataset, const MatchCriterion& criterion, GroupingMode mode) {
    criterion.validate();
    const MatchCriterion crit = criterion.without_bias();
    for (const auto& s : dataset.specimens)
        for (Element e : crit.elements) (void)s.at(e);

    GroupingResult r;
    r.mode = mode;
    r.criterion = crit;
    const std::size_t n = dataset.specimens.size();
    {
        std::set<std::string> seen;
        for (const auto& s : dataset.specimens) {
            if (!seen.insert(s.id).second) throw ConflictError("duplicate specimen id '" + s.id + "'");
            r.ids.push_back(s.id);
        }
    }

    r.match_matrix.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        r.match_matrix[i][i] = true;
        for (std::size_t j = i + 1; j < n; ++j) {
            const MatchResult m = match_specimens(dataset.specimens[i], dataset.specimens[j], crit);
            r.match_matrix[i][j] = r.match_matrix[j][i] = m.matched;
            const bool touch = std::any_of(m.per_element.begin(), m.per_element.end(),
                                           [](const auto& kv) { return kv.second.touching; });
            if (touch) {
                auto pair = std::minmax(r.ids[i], r.ids[j]);
                r.touching_pairs.emplace_back(pair.first, pair.second);
            }
        }
    }
    std::sort(r.touching_pairs.begin(), r.touching_pairs.end());

    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) {
            if (a == b || !r.match_matrix[a][b]) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == b || c == a || !r.match_matrix[b][c] || r.match_matrix[a][c]) continue;
                if (r.ids[a] < r.ids[c]) r.nontransitive_triples.push_back({r.ids[a], r.ids[b], r.ids[c]});
            }
        }
    }
    std::sort(r.nontransitive_triples.begin(), r.nontransitive_triples.end());

    if (mode == GroupingMode::connected_components) {
        r.groups = to_sorted_groups(components(r.match_matrix), r.ids);
    } else {
        std::vector<std::vector<std::size_t>> cliques;
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::vector<std::size_t> current;
        if (n > 0) bron_kerbosch(r.match_matrix, current, all, {}, cliques);
        r.groups = to_sorted_groups(cliques, r.ids);
        std::size_t members = 0;
        for (const auto& g : r.groups) members += g.size();
        r.groups_overlap = members > n;
    }
    return r;
}

BoxMatchRate within_box_match_rate(const Dataset& dataset, const MatchCriterion& criterion) {
    if (dataset.empty()) throw DomainError("within-box match rate needs a nonempty dataset");
    criterion.validate();
    const MatchCriterion crit = criterion.without_bias();
    BoxMatchRate out;
    const auto& sp = dataset.specimens;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        for (std::size_t j = i + 1; j < sp.size(); ++j) {
            if (!sp[i].lot || sp[i].lot != sp[j].lot) continue;
            ++out.pairs_total;
            if (match_specimens(sp[i], sp[j], crit).matched) ++out.pairs_matched;
        }
    }
    out.rate = out.pairs_total == 0
                   ? 0.0
                   : static_cast<double>(out.pairs_matched) / static_cast<double>(out.pairs_total);
    return out;
}

}  // namespace cabl
