#pragma once

#include "hdg/arcs.hpp"
#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"
#include "hdg/layout.hpp"
#include "hdg/matrix.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hdg {

// One basepoint on each curve (Prop-style general basepoints; the matching
// gives the default system).
struct Basepoints {
    std::vector<CrossingIdx> on_alpha;
    std::vector<CrossingIdx> on_beta;
};

inline Basepoints matching_basepoints(const DecoratedDiagram& d) {
    if (!d.has_matching()) throw InvalidMatching("diagram carries no matching");
    Basepoints bp;
    for (int i = 0; i < d.genus(); ++i) bp.on_alpha.push_back(d.matched_on_alpha(i));
    for (int j = 0; j < d.genus(); ++j) bp.on_beta.push_back(d.matched_on_beta(j));
    return bp;
}

// Pairing table for ell-type sums:
//   value(c,d) = <A_c, B_d> - sum_{(i,j)} J_{ji} <A_c, beta_j> <alpha_i, B_d>
// where A_c runs from the alpha basepoint to c and B_d from the beta basepoint
// to d. Closed starts ([p,c|) give ell, open starts (|p,c|) give ell-tilde.
class PairingEngine {
  public:
    PairingEngine(const DecoratedDiagram& d, const Basepoints& bp, bool closed_start)
        : d_(d), J_(d.inverse_intersection()) {
        const int g = d.genus();
        const int n = d.num_crossings();
        const ArcEnd start = closed_start ? ArcEnd::Closed : ArcEnd::Half;
        A_.reserve(n);
        B_.reserve(n);
        u_.assign(n, std::vector<Rational>(g));
        w_.assign(n, std::vector<Rational>(g));
        for (CrossingIdx c = 0; c < n; ++c) {
            const int i = d.alpha_of(c);
            const int j = d.beta_of(c);
            A_.push_back(subarc(d, false, i, bp.on_alpha[i], c, start, ArcEnd::Half));
            B_.push_back(subarc(d, true, j, bp.on_beta[j], c, start, ArcEnd::Half));
            for (int k = 0; k < g; ++k) u_[c][k] = pair_with_curve(d, A_.back(), true, k);
            std::vector<Rational> v(g);
            for (int k = 0; k < g; ++k) v[k] = pair_with_curve(d, B_.back(), false, k);
            for (int jj = 0; jj < g; ++jj)
                for (int ii = 0; ii < g; ++ii) w_[c][jj] += J_.at(jj, ii) * v[ii];
        }
    }

    const RationalMatrix& J() const { return J_; }
    const WeightedArcSet& alpha_arc(CrossingIdx c) const { return A_[c]; }
    const WeightedArcSet& beta_arc(CrossingIdx c) const { return B_[c]; }

    Rational value(CrossingIdx c, CrossingIdx d) const {
        Rational acc = pair(d_, A_[c], B_[d]);
        for (int j = 0; j < d_.genus(); ++j)
            if (u_[c][j] != 0 && w_[d][j] != 0) acc -= u_[c][j] * w_[d][j];
        return acc;
    }

  private:
    const DecoratedDiagram& d_;
    RationalMatrix J_;
    std::vector<WeightedArcSet> A_, B_;
    std::vector<std::vector<Rational>> u_;  // <A_c, beta_j>
    std::vector<std::vector<Rational>> w_;  // sum_i J_{ji} <alpha_i, B_d>
};

inline Rational ell_tilde(const DecoratedDiagram& d, const Basepoints& bp, CrossingIdx c,
                          CrossingIdx e) {
    return PairingEngine(d, bp, false).value(c, e);
}

inline Rational ell(const DecoratedDiagram& d, const Basepoints& bp, CrossingIdx c,
                    CrossingIdx e) {
    return PairingEngine(d, bp, true).value(c, e);
}

// Rational formal sum of flow lines gamma(c).
struct FlowCycle {
    std::map<CrossingIdx, Rational> coeff;
};

inline bool is_cycle(const DecoratedDiagram& d, const FlowCycle& k) {
    std::vector<Rational> by_alpha(d.genus()), by_beta(d.genus());
    for (const auto& [c, v] : k.coeff) {
        by_alpha[d.alpha_of(c)] += v;
        by_beta[d.beta_of(c)] += v;
    }
    for (const auto& r : by_alpha)
        if (r != 0) return false;
    for (const auto& r : by_beta)
        if (r != 0) return false;
    return true;
}

// L(D,m) = sum_i gamma_i - sum_c J_{j(c)i(c)} sigma(c) gamma(c).
inline FlowCycle L_cycle(const DecoratedDiagram& d) {
    if (!d.has_matching()) throw InvalidMatching("L(D,m) needs a matching");
    const RationalMatrix J = d.inverse_intersection();
    FlowCycle k;
    for (CrossingIdx c = 0; c < d.num_crossings(); ++c) {
        Rational v = -J.at(d.beta_of(c), d.alpha_of(c)) * d.sign_of(c);
        if (d.is_matched(c)) v += 1;
        if (v != 0) k.coeff[c] = v;
    }
    return k;
}

// lk(K, L_par) = sum k_c g_d ell-tilde(c,d) for cycles K, L.
inline Rational lk_parallel(const DecoratedDiagram& d, const FlowCycle& K, const FlowCycle& L,
                            const Basepoints& bp) {
    if (!is_cycle(d, K) || !is_cycle(d, L))
        throw NotACycle("lk_parallel needs boundary-free flow sums");
    PairingEngine eng(d, bp, false);
    Rational acc = 0;
    for (const auto& [c, kc] : K.coeff)
        for (const auto& [e, ge] : L.coeff) acc += kc * ge * eng.value(c, e);
    return acc;
}

inline Rational lk_parallel(const DecoratedDiagram& d, const FlowCycle& K, const FlowCycle& L) {
    return lk_parallel(d, K, L, matching_basepoints(d));
}

// Rational formal sum of gamma(c) x gamma(d)_par.
struct TwoCycle {
    std::map<std::pair<CrossingIdx, CrossingIdx>, Rational> coeff;
};

inline bool is_two_cycle(const DecoratedDiagram& d, const TwoCycle& G) {
    // For each fixed second index, sums over every alpha and beta curve in the
    // first slot must vanish, and symmetrically.
    std::map<std::pair<int, CrossingIdx>, Rational> acc;
    auto add = [&](int curve_key, CrossingIdx fixed, const Rational& v) {
        acc[{curve_key, fixed}] += v;
    };
    const int g = d.genus();
    for (const auto& [cd, v] : G.coeff) {
        const auto [c, e] = cd;
        add(d.alpha_of(c), e, v);
        add(g + d.beta_of(c), e, v);
        add(2 * g + d.alpha_of(e), c, v);
        add(3 * g + d.beta_of(e), c, v);
    }
    for (const auto& [k, v] : acc)
        if (v != 0) return false;
    return true;
}

// G(D): the canonical 2-cycle whose ell^2 evaluation is ell_2(D).
inline TwoCycle G_two_cycle(const DecoratedDiagram& d) {
    const RationalMatrix J = d.inverse_intersection();
    TwoCycle G;
    const int n = d.num_crossings();
    for (CrossingIdx c = 0; c < n; ++c)
        for (CrossingIdx e = 0; e < n; ++e) {
            Rational v = J.at(d.beta_of(c), d.alpha_of(e)) * J.at(d.beta_of(e), d.alpha_of(c)) *
                         d.sign_of(c) * d.sign_of(e);
            if (c == e) v -= J.at(d.beta_of(c), d.alpha_of(c)) * d.sign_of(c);
            if (v != 0) G.coeff[{c, e}] = v;
        }
    return G;
}

// ell^2(G) = sum g_cd ell(c,d); independent of the basepoints.
inline Rational ell2_of_2cycle(const DecoratedDiagram& d, const Basepoints& bp,
                               const TwoCycle& G) {
    if (!is_two_cycle(d, G)) throw NotACycle("ell2_of_2cycle needs a 2-cycle");
    PairingEngine eng(d, bp, true);
    Rational acc = 0;
    for (const auto& [cd, v] : G.coeff) acc += v * eng.value(cd.first, cd.second);
    return acc;
}

// ell_2(D) by the displayed ell-tilde_m double sum.
inline Rational ell2(const DecoratedDiagram& d) {
    PairingEngine eng(d, matching_basepoints(d), false);
    const RationalMatrix& J = eng.J();
    const int n = d.num_crossings();
    Rational acc = 0;
    for (CrossingIdx c = 0; c < n; ++c)
        for (CrossingIdx e = 0; e < n; ++e) {
            Rational coeff = J.at(d.beta_of(c), d.alpha_of(e)) *
                             J.at(d.beta_of(e), d.alpha_of(c)) * d.sign_of(c) * d.sign_of(e);
            if (c == e) coeff -= J.at(d.beta_of(c), d.alpha_of(c)) * d.sign_of(c);
            if (coeff != 0) acc += coeff * eng.value(c, e);
        }
    return acc;
}

// s_ell(D,m) by the displayed ell-tilde_m double sum.
inline Rational s_ell(const DecoratedDiagram& d) {
    PairingEngine eng(d, matching_basepoints(d), false);
    const RationalMatrix& J = eng.J();
    const int n = d.num_crossings();
    std::vector<Rational> x(n);
    for (CrossingIdx c = 0; c < n; ++c)
        x[c] = J.at(d.beta_of(c), d.alpha_of(c)) * d.sign_of(c);
    Rational acc = 0;
    for (CrossingIdx c = 0; c < n; ++c) {
        if (x[c] == 0) continue;
        for (CrossingIdx e = 0; e < n; ++e) {
            if (x[e] == 0) continue;
            acc += x[c] * x[e] * eng.value(c, e);
        }
    }
    return acc;
}

struct InvariantSet {
    Rational ell2;
    Rational s_ell;
    Rational euler;
    Rational theta_tilde;
};

inline Rational theta_tilde(const DecoratedDiagram& d) {
    return ell2(d) + s_ell(d) - euler_term(d);
}

inline InvariantSet all_invariants(const DecoratedDiagram& d) {
    InvariantSet s;
    s.ell2 = ell2(d);
    s.s_ell = s_ell(d);
    s.euler = euler_term(d);
    s.theta_tilde = s.ell2 + s.s_ell - s.euler;
    return s;
}

}  // namespace hdg
