#pragma once

#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"
#include "hdg/rational.hpp"

#include <map>

namespace hdg {

enum class ArcEnd { Closed, Half };

// A subarc [d,e| / |d,e| of one curve, stored as crossing -> weight in
// {1/2, 1} (absent = 0). The degenerate conventions are
// |c,c| = {}, [c,c| = |c,c] = {c:1/2}, [c,c] = {c:1}.
struct WeightedArcSet {
    bool on_beta = false;
    int curve = 0;
    std::map<CrossingIdx, Rational> weights;
};

inline WeightedArcSet subarc(const DecoratedDiagram& d, bool on_beta, int curve,
                             CrossingIdx from, CrossingIdx to, ArcEnd start_mode,
                             ArcEnd end_mode) {
    const auto& info_from = d.crossing(from);
    const auto& info_to = d.crossing(to);
    const int curve_of_from = on_beta ? info_from.beta_curve : info_from.alpha_curve;
    const int curve_of_to = on_beta ? info_to.beta_curve : info_to.alpha_curve;
    if (curve_of_from != curve || curve_of_to != curve)
        throw CrossingNotOnCurve("subarc endpoints must lie on the named curve");

    WeightedArcSet set;
    set.on_beta = on_beta;
    set.curve = curve;

    if (from == to) {
        if (start_mode == ArcEnd::Half && end_mode == ArcEnd::Half) return set;  // |c,c| = {}
        if (start_mode == ArcEnd::Closed && end_mode == ArcEnd::Closed) {
            set.weights[from] = 1;  // [c,c]
            return set;
        }
        set.weights[from] = half();  // [c,c| or |c,c]
        return set;
    }

    const auto& order = on_beta ? d.beta_order(curve) : d.alpha_order(curve);
    const int len = static_cast<int>(order.size());
    const int p_from = on_beta ? info_from.beta_pos : info_from.alpha_pos;
    const int p_to = on_beta ? info_to.beta_pos : info_to.alpha_pos;

    set.weights[from] = start_mode == ArcEnd::Closed ? Rational(1) : half();
    for (int p = (p_from + 1) % len; p != p_to; p = (p + 1) % len) set.weights[order[p]] = 1;
    set.weights[to] = end_mode == ArcEnd::Closed ? Rational(1) : half();
    return set;
}

// <I, J> = sum_c sigma(c) w_I(c) w_J(c) over common crossings; I on an alpha
// curve, J on a beta curve (or vice versa).
inline Rational pair(const DecoratedDiagram& d, const WeightedArcSet& I,
                     const WeightedArcSet& J) {
    const WeightedArcSet* small = &I;
    const WeightedArcSet* large = &J;
    if (J.weights.size() < I.weights.size()) std::swap(small, large);
    Rational acc = 0;
    for (const auto& [c, w] : small->weights) {
        auto it = large->weights.find(c);
        if (it == large->weights.end()) continue;
        acc += d.sign_of(c) * w * it->second;
    }
    return acc;
}

// <I, beta_j> (or <alpha_i, I>): the pairing against the full curve.
inline Rational pair_with_curve(const DecoratedDiagram& d, const WeightedArcSet& I,
                                bool other_beta, int other_curve) {
    Rational acc = 0;
    for (const auto& [c, w] : I.weights) {
        const int cur = other_beta ? d.beta_of(c) : d.alpha_of(c);
        if (cur == other_curve) acc += d.sign_of(c) * w;
    }
    return acc;
}

}  // namespace hdg
