#pragma once

#include "hdg/arcs.hpp"
#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"

#include <vector>

namespace hdg {

// Total degree of the tangent map of beta_j in the rectangular drawing.
inline Rational de_beta(const DecoratedDiagram& d, int j) {
    long long t = 0;
    const int len = static_cast<int>(d.beta_order(j).size());
    for (int p = 0; p < len; ++p) t += d.turning(j, p);
    return Rational(t, 2);
}

// Degree of the tangent map along beta_j from the crossing at position
// `from_pos` forward to the crossing at position `to_pos` (0 if equal).
inline Rational de_between(const DecoratedDiagram& d, int j, int from_pos, int to_pos) {
    const int len = static_cast<int>(d.beta_order(j).size());
    long long t = 0;
    for (int p = from_pos; p != to_pos; p = (p + 1) % len) t += d.turning(j, p);
    return Rational(t, 2);
}

// d_e(|m_{j(c)}, c|_beta).
inline Rational de_subarc(const DecoratedDiagram& d, CrossingIdx c) {
    if (!d.has_matching()) throw InvalidMatching("degree data needs a matching");
    const int j = d.beta_of(c);
    const CrossingIdx m = d.matched_on_beta(j);
    return de_between(d, j, d.crossing(m).beta_pos, d.crossing(c).beta_pos);
}

// d_e(c) = d_e(|m_{j(c)},c|_b) - sum_{(r,s)} J_{sr} <alpha_r, |m_{j(c)},c|_b> d_e(beta_s).
inline Rational de_crossing(const DecoratedDiagram& d, CrossingIdx c,
                            const RationalMatrix& J) {
    const int g = d.genus();
    const int j = d.beta_of(c);
    const CrossingIdx m = d.matched_on_beta(j);
    const WeightedArcSet arc = subarc(d, true, j, m, c, ArcEnd::Half, ArcEnd::Half);
    Rational acc = de_subarc(d, c);
    for (int s = 0; s < g; ++s) {
        const Rational des = de_beta(d, s);
        if (des == 0) continue;
        for (int r = 0; r < g; ++r) {
            if (J.at(s, r) == 0) continue;
            const Rational pr = pair_with_curve(d, arc, false, r);
            if (pr != 0) acc -= J.at(s, r) * pr * des;
        }
    }
    return acc;
}

inline Rational de_crossing(const DecoratedDiagram& d, CrossingIdx c) {
    return de_crossing(d, c, d.inverse_intersection());
}

// e(D,w,m) = sum_c J_{j(c)i(c)} sigma(c) d_e(c).
inline Rational euler_term(const DecoratedDiagram& d) {
    const RationalMatrix J = d.inverse_intersection();
    Rational acc = 0;
    for (CrossingIdx c = 0; c < d.num_crossings(); ++c) {
        const Rational coeff = J.at(d.beta_of(c), d.alpha_of(c)) * d.sign_of(c);
        if (coeff != 0) acc += coeff * de_crossing(d, c, J);
    }
    return acc;
}

namespace detail {

// Rewrite the per-arc turnings of beta_j so that the degree from the crossing
// at position start_pos to the p-th crossing after it equals prefix[p], and
// the total degree equals total. Differences must be half-integral.
inline void install_prefixes(std::vector<long long>& turn, int start_pos,
                             const std::vector<Rational>& prefix, const Rational& total) {
    const int len = static_cast<int>(turn.size());
    auto half_turns = [](const Rational& r) -> long long {
        const Rational doubled = r * 2;
        const Integer num = boost::multiprecision::numerator(doubled);
        if (boost::multiprecision::denominator(doubled) != 1)
            throw EulerCheckFailed("turning reconstruction hit a non-half-integral degree");
        return num.convert_to<long long>();
    };
    for (int p = 0; p + 1 < len; ++p)
        turn[(start_pos + p) % len] = half_turns(prefix[p + 1] - prefix[p]);
    turn[(start_pos + len - 1) % len] = half_turns(total - prefix[len - 1]);
}

}  // namespace detail

enum class TwistSide { AlphaPrime, AlphaDoublePrime };

// Full twist of the circle alpha'_i or alpha''_i in the rectangular drawing.
// Degrees change per the twist law: d_e(beta_s) +-= <alpha_i, beta_s> and
// d_e(|m_j,c|) +-= <alpha_i,|m_j,c|> shifted by (1/2)(delta_{i(c)i} - delta_{rho(i)j(c)});
// the arc turnings are rebuilt from those prefix degrees.
inline DecoratedDiagram apply_full_twist(const DecoratedDiagram& d, int handle,
                                         TwistSide side, int sense) {
    if (!d.has_matching()) throw InvalidMatching("apply_full_twist needs a matching");
    if (sense != 1 && sense != -1) throw InvalidSite("twist sense must be +-1");
    const int g = d.genus();
    if (handle < 0 || handle >= g) throw InvalidSite("twist handle out of range");
    const int dir = side == TwistSide::AlphaPrime ? 1 : -1;
    const int rho_i_beta = d.beta_of(d.matched_on_alpha(handle));  // rho(i)

    RawDiagram raw = d.to_raw();
    for (int j = 0; j < g; ++j) {
        const auto& order = d.beta_order(j);
        const int len = static_cast<int>(order.size());
        const int mp = d.crossing(d.matched_on_beta(j)).beta_pos;
        auto half_weight = [&](CrossingIdx c) {
            return d.alpha_of(c) == handle ? Rational(d.sign_of(c), 2) : Rational(0);
        };

        std::vector<Rational> prefix(len);
        Rational along = 0;  // <alpha_handle, |m_j, c_p|_beta> built incrementally
        for (int p = 0; p < len; ++p) {
            const CrossingIdx c = order[(mp + p) % len];
            if (p > 0) along += half_weight(c);  // open end at weight 1/2
            Rational shift = sense * dir * along;
            if (d.alpha_of(c) == handle) shift += Rational(sense, 2);
            if (rho_i_beta == j) shift -= Rational(sense, 2);
            prefix[p] = de_between(d, j, mp, d.crossing(c).beta_pos) + shift;
            // m_j carries weight 1/2 in all later arcs; interior crossings weight 1.
            along += half_weight(c);
        }
        Rational total = de_beta(d, j);
        Rational whole = 0;  // <alpha_handle, beta_j>
        for (CrossingIdx c : order)
            if (d.alpha_of(c) == handle) whole += d.sign_of(c);
        total += sense * dir * whole;

        std::vector<long long> turn(len);
        for (int p = 0; p < len; ++p) turn[p] = d.turning(j, p);
        detail::install_prefixes(turn, mp, prefix, total);
        for (int p = 0; p < len; ++p) raw.beta[j][p].turning = turn[p];
    }
    return DecoratedDiagram::build(raw);
}

// Re-normalize the layout for a new matching m' (given per beta curve):
//   d_e'(beta_j)    = d_e(beta_j) - 2 sum_i <|m_i,d_i|_a, beta_j>
//   d_e'(|d_j,c|_b) = d_e(|d_j,c|_b) - 2 sum_i <|m_i,d_i|_a, |d_j,c|_b>
// with all right-hand sides in the original layout and matching.
inline DecoratedDiagram relayout_for_matching(const DecoratedDiagram& d,
                                              const std::vector<CrossingIdx>& new_matching) {
    if (!d.has_matching()) throw InvalidMatching("relayout_for_matching needs a matching");
    const int g = d.genus();
    if (static_cast<int>(new_matching.size()) != g)
        throw InvalidMatching("new matching must have one crossing per beta curve");

    std::vector<CrossingIdx> new_on_alpha(g, -1);
    for (int j = 0; j < g; ++j) {
        const CrossingIdx c = new_matching[j];
        if (d.beta_of(c) != j) throw InvalidMatching("matching entry not on its beta curve");
        if (new_on_alpha[d.alpha_of(c)] != -1)
            throw InvalidMatching("two matching crossings on one alpha curve");
        new_on_alpha[d.alpha_of(c)] = c;
    }

    // The alpha arcs |m_i, d_i|_alpha from the old to the new matched crossing.
    std::vector<WeightedArcSet> shift_arcs;
    for (int i = 0; i < g; ++i)
        shift_arcs.push_back(subarc(d, false, i, d.matched_on_alpha(i), new_on_alpha[i],
                                    ArcEnd::Half, ArcEnd::Half));

    RawDiagram raw = d.to_raw();
    raw.matching.clear();
    for (int j = 0; j < g; ++j) raw.matching.push_back(d.token(new_matching[j]));

    for (int j = 0; j < g; ++j) {
        const auto& order = d.beta_order(j);
        const int len = static_cast<int>(order.size());
        const int dp = d.crossing(new_matching[j]).beta_pos;

        Rational total = de_beta(d, j);
        for (int i = 0; i < g; ++i) total -= 2 * pair_with_curve(d, shift_arcs[i], true, j);

        std::vector<Rational> prefix(len);
        for (int p = 0; p < len; ++p) {
            const CrossingIdx c = order[(dp + p) % len];
            Rational val = de_between(d, j, dp, d.crossing(c).beta_pos);
            if (p > 0) {
                const WeightedArcSet seg =
                    subarc(d, true, j, new_matching[j], c, ArcEnd::Half, ArcEnd::Half);
                for (int i = 0; i < g; ++i) val -= 2 * pair(d, shift_arcs[i], seg);
            }
            prefix[p] = val;
        }

        std::vector<long long> turn(len);
        for (int p = 0; p < len; ++p) turn[p] = d.turning(j, p);
        detail::install_prefixes(turn, dp, prefix, total);
        for (int p = 0; p < len; ++p) raw.beta[j][p].turning = turn[p];
    }
    return DecoratedDiagram::build(raw);
}

// Slide the exterior point along an alpha-avoiding path: every transverse hit
// of a beta arc adds two full turns (sign-weighted) to that arc.
struct BetaArcHit {
    int beta_curve = 0;
    int arc_pos = 0;
    int sign = 1;
};

inline DecoratedDiagram apply_w_change(const DecoratedDiagram& d,
                                       const std::vector<BetaArcHit>& hits) {
    RawDiagram raw = d.to_raw();
    for (const auto& h : hits) {
        if (h.beta_curve < 0 || h.beta_curve >= d.genus() ||
            h.arc_pos < 0 ||
            h.arc_pos >= static_cast<int>(raw.beta[h.beta_curve].size()))
            throw InconsistentPath("beta arc hit out of range");
        raw.beta[h.beta_curve][h.arc_pos].turning += 4LL * h.sign;
    }
    return DecoratedDiagram::build(raw);
}

}  // namespace hdg
