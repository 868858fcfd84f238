#pragma once

#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"

#include <vector>

namespace hdg {

// Perfect matching in the bipartite graph {alpha_i} x {beta_j} with an edge
// where the curves intersect, realized by concrete crossings. Augmenting-path
// search scanning vertices in input order; the witness crossing for a pair
// (i,j) is the first crossing of alpha_i on beta_j in alpha order, so the
// result is deterministic.
inline std::vector<CrossingIdx> find_matching(const DecoratedDiagram& d) {
    const int g = d.genus();
    std::vector<std::vector<CrossingIdx>> witness(g, std::vector<CrossingIdx>(g, -1));
    for (int i = 0; i < g; ++i)
        for (CrossingIdx c : d.alpha_order(i))
            if (witness[i][d.beta_of(c)] == -1) witness[i][d.beta_of(c)] = c;

    std::vector<int> match_alpha(g, -1);  // alpha i -> beta j
    std::vector<int> match_beta(g, -1);
    std::vector<bool> visited;

    auto augment = [&](auto&& self, int i) -> bool {
        for (int j = 0; j < g; ++j) {
            if (witness[i][j] == -1 || visited[j]) continue;
            visited[j] = true;
            if (match_beta[j] == -1 || self(self, match_beta[j])) {
                match_beta[j] = i;
                match_alpha[i] = j;
                return true;
            }
        }
        return false;
    };

    for (int i = 0; i < g; ++i) {
        visited.assign(g, false);
        if (!augment(augment, i))
            throw NoPerfectMatching("no perfect matching between alpha and beta curves");
    }

    std::vector<CrossingIdx> m(g);
    for (int j = 0; j < g; ++j) m[j] = witness[match_beta[j]][j];
    return m;
}

// Rebuild the diagram with the given matching installed (crossings given per
// beta curve).
inline DecoratedDiagram with_matching(const DecoratedDiagram& d,
                                      const std::vector<CrossingIdx>& m) {
    RawDiagram raw = d.to_raw();
    raw.matching.clear();
    for (CrossingIdx c : m) raw.matching.push_back(d.token(c));
    return DecoratedDiagram::build(raw);
}

}  // namespace hdg
