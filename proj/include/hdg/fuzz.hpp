#pragma once

#include "hdg/diagram.hpp"
#include "hdg/invariants.hpp"
#include "hdg/layout.hpp"
#include "hdg/matching.hpp"
#include "hdg/moves.hpp"
#include "hdg/transforms.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace hdg {

struct FuzzOptions {
    int steps = 12;
    int genus_max = 4;
    int crossings_max = 200;
};

// Random diagram built from a base by valid moves; every move preserves the
// presented manifold, so diagrams grown from the genus-one S^3 diagram always
// present S^3 and keep theta-tilde = 0.
inline DecoratedDiagram random_diagram_from(const DecoratedDiagram& base, std::uint64_t seed,
                                            const FuzzOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    DecoratedDiagram d = base;
    std::uniform_int_distribution<int> percent(0, 99);
    for (int step = 0; step < opt.steps; ++step) {
        const int roll = percent(rng);
        try {
            if (roll < 40) {  // bigon birth
                if (2 + d.num_crossings() > opt.crossings_max) continue;
                const FaceStructure fs = d.faces();
                auto sites = bigon_sites(d, fs);
                if (sites.empty()) continue;
                std::uniform_int_distribution<size_t> pick(0, sites.size() - 1);
                d = bigon_birth(d, sites[pick(rng)]);
            } else if (roll < 65) {  // full twist
                std::uniform_int_distribution<int> h(0, d.genus() - 1);
                const TwistSide side =
                    percent(rng) < 50 ? TwistSide::AlphaPrime : TwistSide::AlphaDoublePrime;
                d = apply_full_twist(d, h(rng), side, percent(rng) < 50 ? 1 : -1);
            } else if (roll < 85) {  // handle slide
                if (d.genus() < 2) continue;
                if (d.num_crossings() * 2 > opt.crossings_max) continue;
                const FaceStructure fs = d.faces();
                auto sites = slide_sites(d, fs);
                if (sites.empty()) continue;
                std::uniform_int_distribution<size_t> pick(0, sites.size() - 1);
                d = handle_slide_beta(d, sites[pick(rng)]);
            } else if (roll < 95) {  // bigon death
                const FaceStructure fs = d.faces();
                auto sites = bigon_faces(d, fs);
                if (sites.empty()) continue;
                std::uniform_int_distribution<size_t> pick(0, sites.size() - 1);
                d = bigon_death(d, sites[pick(rng)]);
            } else {  // stabilization
                if (d.genus() >= opt.genus_max) continue;
                d = stabilize(d);
            }
        } catch (const InvalidSite&) {
            // Rejected site; try another move.
        }
    }
    return d;
}

inline DecoratedDiagram random_diagram(std::uint64_t seed, int steps = 12, int genus_max = 4) {
    FuzzOptions opt;
    opt.steps = steps;
    opt.genus_max = genus_max;
    return random_diagram_from(genus_one_s3(), seed, opt);
}

// Random relabeling data for invariance tests.
inline DecoratedDiagram random_relabel(const DecoratedDiagram& d, std::mt19937_64& rng) {
    const int g = d.genus();
    std::vector<int> pa(g), pb(g), ra(g), rb(g);
    std::iota(pa.begin(), pa.end(), 0);
    std::iota(pb.begin(), pb.end(), 0);
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pb.begin(), pb.end(), rng);
    for (int i = 0; i < g; ++i) {
        ra[i] = std::uniform_int_distribution<int>(
            0, static_cast<int>(d.alpha_order(i).size()) - 1)(rng);
        rb[i] = std::uniform_int_distribution<int>(
            0, static_cast<int>(d.beta_order(i).size()) - 1)(rng);
    }
    return relabel(d, pa, pb, ra, rb);
}

// Random matching other than the current one, when one exists; falls back to
// the current matching.
inline std::vector<CrossingIdx> random_matching(const DecoratedDiagram& d,
                                                std::mt19937_64& rng) {
    const int g = d.genus();
    // Collect crossings per (beta curve, alpha curve); run a randomized
    // augmenting-path matching over the curve bipartite graph.
    std::vector<std::vector<std::vector<CrossingIdx>>> options(
        g, std::vector<std::vector<CrossingIdx>>(g));
    for (CrossingIdx c = 0; c < d.num_crossings(); ++c)
        options[d.beta_of(c)][d.alpha_of(c)].push_back(c);

    std::vector<int> match_alpha(g, -1), match_beta(g, -1);
    std::vector<bool> visited;
    std::vector<int> order(g);
    std::iota(order.begin(), order.end(), 0);
    auto augment = [&](auto&& self, int j) -> bool {
        std::vector<int> cols(g);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(cols.begin(), cols.end(), rng);
        for (int i : cols) {
            if (options[j][i].empty() || visited[i]) continue;
            visited[i] = true;
            if (match_alpha[i] == -1 || self(self, match_alpha[i])) {
                match_alpha[i] = j;
                match_beta[j] = i;
                return true;
            }
        }
        return false;
    };
    std::shuffle(order.begin(), order.end(), rng);
    for (int j : order) {
        visited.assign(g, false);
        if (!augment(augment, j)) return {};  // cannot happen on a matched diagram
    }
    std::vector<CrossingIdx> m(g);
    for (int j = 0; j < g; ++j) {
        const auto& opts = options[j][match_beta[j]];
        m[j] = opts[std::uniform_int_distribution<size_t>(0, opts.size() - 1)(rng)];
    }
    return m;
}

inline Basepoints random_basepoints(const DecoratedDiagram& d, std::mt19937_64& rng) {
    Basepoints bp;
    for (int i = 0; i < d.genus(); ++i) {
        const auto& ord = d.alpha_order(i);
        bp.on_alpha.push_back(ord[std::uniform_int_distribution<size_t>(0, ord.size() - 1)(rng)]);
    }
    for (int j = 0; j < d.genus(); ++j) {
        const auto& ord = d.beta_order(j);
        bp.on_beta.push_back(ord[std::uniform_int_distribution<size_t>(0, ord.size() - 1)(rng)]);
    }
    return bp;
}

}  // namespace hdg
