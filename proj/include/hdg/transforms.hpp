#pragma once

#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"
#include "hdg/layout.hpp"

#include <numeric>
#include <vector>

namespace hdg {

// Present -M: mirror the drawing (all turnings negate) and flip every
// crossing sign. Orders and matching are kept.
inline DecoratedDiagram reverse_orientation(const DecoratedDiagram& d) {
    RawDiagram raw = d.to_raw();
    for (auto& curve : raw.beta)
        for (auto& e : curve) {
            e.sign = -e.sign;
            e.turning = -e.turning;
        }
    return DecoratedDiagram::build(raw);
}

// Exchange the roles of the alpha and beta curves. Signs flip with the
// surface orientation convention; the matching transfers (the matched
// crossing on alpha_i becomes the matched crossing of the new beta_i).
//
// The new beta turnings are installed so that the new layout's per-crossing
// degree function equals the old one: with all new total degrees set to 0,
// prefix(c) := d_e(c) makes e invariant under the swap, as required by the
// Euler-class symmetry. This needs d_e(c) to be half-integral, which holds in
// particular whenever the relevant J entries are half-integral.
inline DecoratedDiagram swap_roles(const DecoratedDiagram& d) {
    const int g = d.genus();
    const RationalMatrix J = d.inverse_intersection();

    RawDiagram raw;
    raw.genus = g;
    raw.alpha.resize(g);
    raw.beta.resize(g);
    for (int j = 0; j < g; ++j)
        for (CrossingIdx c : d.beta_order(j)) raw.alpha[j].push_back(d.token(c));
    for (int i = 0; i < g; ++i) {
        const auto& order = d.alpha_order(i);
        const int len = static_cast<int>(order.size());
        for (CrossingIdx c : order) raw.beta[i].push_back({d.token(c), -d.sign_of(c), 0});
        if (d.has_matching()) {
            const int mp = d.crossing(d.matched_on_alpha(i)).alpha_pos;
            std::vector<Rational> prefix(len);
            for (int p = 0; p < len; ++p)
                prefix[p] = de_crossing(d, order[(mp + p) % len], J);
            std::vector<long long> turn(len, 0);
            detail::install_prefixes(turn, mp, prefix, Rational(0));
            for (int p = 0; p < len; ++p) raw.beta[i][p].turning = turn[p];
        }
    }
    if (d.has_matching())
        for (int i = 0; i < g; ++i) raw.matching.push_back(d.token(d.matched_on_alpha(i)));
    return DecoratedDiagram::build(raw);
}

// Renumber curves and rotate the cyclic listings; values of all invariants
// are unaffected. alpha_perm/beta_perm map old index -> new index.
inline DecoratedDiagram relabel(const DecoratedDiagram& d, const std::vector<int>& alpha_perm,
                                const std::vector<int>& beta_perm,
                                const std::vector<int>& alpha_rot,
                                const std::vector<int>& beta_rot) {
    const int g = d.genus();
    RawDiagram raw;
    raw.genus = g;
    raw.alpha.resize(g);
    raw.beta.resize(g);
    for (int i = 0; i < g; ++i) {
        const auto& order = d.alpha_order(i);
        const int len = static_cast<int>(order.size());
        for (int p = 0; p < len; ++p)
            raw.alpha[alpha_perm[i]].push_back(d.token(order[(p + alpha_rot[i]) % len]));
    }
    for (int j = 0; j < g; ++j) {
        const auto& order = d.beta_order(j);
        const int len = static_cast<int>(order.size());
        for (int p = 0; p < len; ++p) {
            const int q = (p + beta_rot[j]) % len;
            raw.beta[beta_perm[j]].push_back(
                {d.token(order[q]), d.sign_of(order[q]), d.turning(j, q)});
        }
    }
    if (d.has_matching()) {
        raw.matching.assign(g, "");
        for (int j = 0; j < g; ++j)
            raw.matching[beta_perm[j]] = d.token(d.matched_on_beta(j));
    }
    return DecoratedDiagram::build(raw);
}

// Reverse the orientation of one curve, flipping the signs of its crossings.
inline DecoratedDiagram reverse_curve(const DecoratedDiagram& d, bool beta, int index) {
    RawDiagram raw = d.to_raw();
    if (!beta) {
        auto& lst = raw.alpha[index];
        std::reverse(lst.begin() + 1, lst.end());
        for (CrossingIdx c : d.alpha_order(index)) {
            auto& entry = raw.beta[d.beta_of(c)][d.crossing(c).beta_pos];
            entry.sign = -entry.sign;
        }
        return DecoratedDiagram::build(raw);
    }
    const auto& order = d.beta_order(index);
    const int len = static_cast<int>(order.size());
    auto& lst = raw.beta[index];
    // New listing starts at the same crossing and runs backward; the arc
    // leaving a crossing in the new direction is the old arriving arc,
    // traversed backward (turning negates).
    std::vector<RawBetaEntry> rev(len);
    for (int p = 0; p < len; ++p) {
        const int q = (len - p) % len;  // old position of the p-th new crossing
        const CrossingIdx c = order[q];
        rev[p] = {d.token(c), -d.sign_of(c),
                  -d.turning(index, (q + len - 1) % len)};
    }
    lst = rev;
    return DecoratedDiagram::build(raw);
}

}  // namespace hdg
