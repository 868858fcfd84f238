#pragma once

#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"
#include "hdg/invariants.hpp"
#include "hdg/layout.hpp"

#include <random>
#include <vector>

namespace hdg {

struct AlphaCurveHit {
    int alpha_curve = 0;
    int sign = 1;
};

// Transverse data of a pair of paths from w to w': [w,w']_alpha avoids the
// alpha curves and records its beta-arc hits; [w,w']_beta avoids the beta
// curves and records its alpha hits. The tangent degrees and the mutual
// intersection count are extra input describing the drawing of the pair.
struct WPath {
    std::vector<BetaArcHit> alpha_hits;
    std::vector<AlphaCurveHit> beta_hits;
    Rational de_alpha = 0;
    Rational de_beta = 0;
    Rational mutual = 0;  // <]w,w'[_alpha, ]w,w'[_beta>
};

namespace detail {

inline void check_alpha_hits(const DecoratedDiagram& d, const std::vector<BetaArcHit>& hits) {
    for (const auto& h : hits) {
        if (h.beta_curve < 0 || h.beta_curve >= d.genus() || h.arc_pos < 0 ||
            h.arc_pos >= static_cast<int>(d.beta_order(h.beta_curve).size()) ||
            (h.sign != 1 && h.sign != -1))
            throw InconsistentPath("beta arc hit out of range");
    }
}

// Signed count of hits on beta_s.
inline Rational hits_on_curve(const std::vector<BetaArcHit>& hits, int s) {
    Rational acc = 0;
    for (const auto& h : hits)
        if (h.beta_curve == s) acc += h.sign;
    return acc;
}

// Signed count of the hits lying on the arcs traversed from the crossing
// `from` to the crossing `to` along their beta curve.
inline Rational hits_on_subarc(const DecoratedDiagram& d, const std::vector<BetaArcHit>& hits,
                               CrossingIdx from, CrossingIdx to) {
    const int j = d.beta_of(from);
    const int len = static_cast<int>(d.beta_order(j).size());
    const int base = d.crossing(from).beta_pos;
    const int span = (d.crossing(to).beta_pos - base + len) % len;
    Rational acc = 0;
    for (const auto& h : hits) {
        if (h.beta_curve != j) continue;
        if ((h.arc_pos - base + len) % len < span) acc += h.sign;
    }
    return acc;
}

}  // namespace detail

// Variation of theta-tilde when the exterior point moves along an
// alpha-avoiding path with the given beta-arc hits:
//   2 sum_c J_{j(c)i(c)} sigma(c) ( sum_{(r,s)} J_{sr} <a_r,|m_{j(c)},c|_b> <P,b_s>
//                                   - <P,|m_{j(c)},c|_b> ).
// The euler term at the endpoint is euler_term(D) minus this value.
inline Rational theta_delta_w(const DecoratedDiagram& d, const WPath& path) {
    if (!d.has_matching()) throw InvalidMatching("theta_delta_w needs a matching");
    detail::check_alpha_hits(d, path.alpha_hits);
    const int g = d.genus();
    const RationalMatrix J = d.inverse_intersection();
    std::vector<Rational> path_on(g);
    for (int s = 0; s < g; ++s) path_on[s] = detail::hits_on_curve(path.alpha_hits, s);

    Rational acc = 0;
    for (CrossingIdx c = 0; c < d.num_crossings(); ++c) {
        const Rational coeff = J.at(d.beta_of(c), d.alpha_of(c)) * d.sign_of(c);
        if (coeff == 0) continue;
        const CrossingIdx m = d.matched_on_beta(d.beta_of(c));
        const WeightedArcSet arc =
            subarc(d, true, d.beta_of(c), m, c, ArcEnd::Half, ArcEnd::Half);
        Rational inner = -detail::hits_on_subarc(d, path.alpha_hits, m, c);
        for (int s = 0; s < g; ++s) {
            if (path_on[s] == 0) continue;
            for (int r = 0; r < g; ++r) {
                if (J.at(s, r) == 0) continue;
                inner += J.at(s, r) * pair_with_curve(d, arc, false, r) * path_on[s];
            }
        }
        acc += coeff * inner;
    }
    return 2 * acc;
}

// lk(K, L(w',w)) for a flow cycle K, from the alpha-path hit data:
//   sum_c k_c <P,[p(b(c)),c|_b> - sum_{(j,i)} sum_c k_c J_{ji} <a_i,[p(b(c)),c|_b> <P,b_j>.
inline Rational lk_with_L_w(const DecoratedDiagram& d, const FlowCycle& K, const WPath& path,
                            const Basepoints& bp) {
    if (!is_cycle(d, K)) throw NotACycle("lk_with_L_w needs a cycle");
    detail::check_alpha_hits(d, path.alpha_hits);
    const int g = d.genus();
    const RationalMatrix J = d.inverse_intersection();
    std::vector<Rational> path_on(g);
    for (int s = 0; s < g; ++s) path_on[s] = detail::hits_on_curve(path.alpha_hits, s);

    Rational acc = 0;
    for (const auto& [c, kc] : K.coeff) {
        const CrossingIdx p = bp.on_beta[d.beta_of(c)];
        acc += kc * detail::hits_on_subarc(d, path.alpha_hits, p, c);
        const WeightedArcSet arc =
            subarc(d, true, d.beta_of(c), p, c, ArcEnd::Closed, ArcEnd::Half);
        for (int j = 0; j < g; ++j) {
            if (path_on[j] == 0) continue;
            for (int i = 0; i < g; ++i) {
                if (J.at(j, i) == 0) continue;
                acc -= kc * J.at(j, i) * pair_with_curve(d, arc, false, i) * path_on[j];
            }
        }
    }
    return acc;
}

inline Rational lk_with_L_w(const DecoratedDiagram& d, const FlowCycle& K, const WPath& path) {
    return lk_with_L_w(d, K, path, matching_basepoints(d));
}

// p_1(X(w',m)) - p_1(X(w,m)) from complete path-pair data:
//   4 d_e([w,w']_a) - 4 d_e([w,w']_b)
//   + 4 sum J_{ji} <a_i,[w,w']_b> d_e(b_j)
//   - 4 <]w,w'[_a, ]w,w'[_b>
//   + 4 sum J_{ji} <a_i,[w,w']_b> <[w,w']_a, b_j>.
inline Rational p1_prime_w(const DecoratedDiagram& d, const WPath& path) {
    detail::check_alpha_hits(d, path.alpha_hits);
    const int g = d.genus();
    const RationalMatrix J = d.inverse_intersection();
    std::vector<Rational> beta_on(g), alpha_on(g);
    for (const auto& h : path.beta_hits) {
        if (h.alpha_curve < 0 || h.alpha_curve >= g || (h.sign != 1 && h.sign != -1))
            throw InconsistentPath("alpha hit out of range");
        alpha_on[h.alpha_curve] += h.sign;
    }
    for (int s = 0; s < g; ++s) beta_on[s] = detail::hits_on_curve(path.alpha_hits, s);

    Rational acc = path.de_alpha - path.de_beta - path.mutual;
    for (int j = 0; j < g; ++j)
        for (int i = 0; i < g; ++i) {
            if (J.at(j, i) == 0 || alpha_on[i] == 0) continue;
            acc += J.at(j, i) * alpha_on[i] * (de_beta(d, j) + beta_on[j]);
        }
    return 4 * acc;
}

// p_1(X(w,m')) - p_1(X(w,m)) = 4 sum_j d_e(d_j) - 4 lk(L(m',m), L(m',m)_par),
// degrees taken in the current (w,m) layout.
inline Rational p1_delta_matching(const DecoratedDiagram& d,
                                  const std::vector<CrossingIdx>& new_matching) {
    if (!d.has_matching()) throw InvalidMatching("p1_delta_matching needs a matching");
    if (static_cast<int>(new_matching.size()) != d.genus())
        throw InvalidMatching("new matching must have one crossing per beta curve");
    const RationalMatrix J = d.inverse_intersection();

    FlowCycle diff;
    Rational degree_sum = 0;
    for (int j = 0; j < d.genus(); ++j) {
        const CrossingIdx nc = new_matching[j];
        if (d.beta_of(nc) != j) throw InvalidMatching("matching entry not on its beta curve");
        degree_sum += de_crossing(d, nc, J);
        diff.coeff[nc] += 1;
        diff.coeff[d.matched_on_beta(j)] -= 1;
    }
    for (auto it = diff.coeff.begin(); it != diff.coeff.end();)
        it = it->second == 0 ? diff.coeff.erase(it) : std::next(it);
    return 4 * degree_sum - 4 * lk_parallel(d, diff, diff);
}

// ---- face walks -------------------------------------------------------

namespace detail {
inline std::vector<ArcRef> family_arcs(const DecoratedDiagram& d, bool use_beta) {
    std::vector<ArcRef> arcs;
    for (int j = 0; j < d.genus(); ++j) {
        const auto& ord = use_beta ? d.beta_order(j) : d.alpha_order(j);
        for (int p = 0; p < static_cast<int>(ord.size()); ++p)
            arcs.push_back({use_beta, j, p});
    }
    return arcs;
}
}  // namespace detail

// Faces reachable from `from_face` crossing only one arc family.
inline std::vector<int> reachable_faces(const DecoratedDiagram& d, const FaceStructure& fs,
                                        int from_face, bool use_beta) {
    const auto arcs = detail::family_arcs(d, use_beta);
    std::vector<int> reachable{from_face};
    std::vector<bool> seen(fs.faces.size(), false);
    seen[from_face] = true;
    for (size_t head = 0; head < reachable.size(); ++head) {
        for (const auto& arc : arcs) {
            const int ai = d.arc_index(arc);
            const int l = fs.left_of[ai];
            const int r = fs.right_of[ai];
            const int u = reachable[head];
            const int v = l == u ? r : (r == u ? l : -1);
            if (v != -1 && !seen[v]) {
                seen[v] = true;
                reachable.push_back(v);
            }
        }
    }
    return reachable;
}

// Hits of a path between two faces crossing only beta arcs (use_beta = true)
// or only alpha arcs (use_beta = false). Hit signs follow the convention
// that crossing an arc from its left face to its right face counts +1.
inline std::vector<std::pair<ArcRef, int>> face_walk(const DecoratedDiagram& d,
                                                     const FaceStructure& fs, int from_face,
                                                     int to_face, bool use_beta,
                                                     std::mt19937_64& rng, int detours = 0) {
    const int nf = static_cast<int>(fs.faces.size());
    std::vector<ArcRef> arcs = detail::family_arcs(d, use_beta);

    auto walk_between = [&](int a, int b) {
        std::vector<std::pair<ArcRef, int>> hits;
        if (a == b) return hits;
        std::vector<int> parent(nf, -1), via(nf, -1);
        std::vector<int> queue{a};
        parent[a] = a;
        std::shuffle(arcs.begin(), arcs.end(), rng);
        for (size_t head = 0; head < queue.size() && parent[b] == -1; ++head) {
            const int u = queue[head];
            for (int k = 0; k < static_cast<int>(arcs.size()); ++k) {
                const int ai = d.arc_index(arcs[k]);
                const int l = fs.left_of[ai];
                const int r = fs.right_of[ai];
                const int v = l == u ? r : (r == u ? l : -1);
                if (v == -1 || parent[v] != -1) continue;
                parent[v] = u;
                via[v] = k;
                queue.push_back(v);
            }
        }
        if (parent[b] == -1) throw InconsistentPath("faces are not connected by such arcs");
        std::vector<std::pair<ArcRef, int>> rev;
        for (int v = b; v != a; v = parent[v]) {
            const ArcRef arc = arcs[via[v]];
            const int sign = fs.left_of[d.arc_index(arc)] == parent[v] ? 1 : -1;
            rev.push_back({arc, sign});
        }
        std::reverse(rev.begin(), rev.end());
        return hits = rev;
    };

    // Wander through `detours` random waypoint faces (within the reachable
    // component) before heading to the target.
    (void)nf;
    const std::vector<int> reachable = reachable_faces(d, fs, from_face, use_beta);
    std::vector<std::pair<ArcRef, int>> hits;
    int cur = from_face;
    std::uniform_int_distribution<size_t> pick(0, reachable.size() - 1);
    for (int k = 0; k < detours; ++k) {
        const int mid = reachable[pick(rng)];
        for (auto& h : walk_between(cur, mid)) hits.push_back(h);
        cur = mid;
    }
    for (auto& h : walk_between(cur, to_face)) hits.push_back(h);
    return hits;
}

inline std::vector<BetaArcHit> beta_walk_hits(const DecoratedDiagram& d,
                                              const FaceStructure& fs, int from_face,
                                              int to_face, std::mt19937_64& rng,
                                              int detours = 0) {
    std::vector<BetaArcHit> out;
    for (const auto& [arc, sign] : face_walk(d, fs, from_face, to_face, true, rng, detours))
        out.push_back({arc.curve, arc.pos, sign});
    return out;
}

// The four faces in the quadrants around a crossing, labeled as in the square
// relation: with the alpha curve drawn downward, w sits top-left, N top-right,
// S bottom-left and E bottom-right.
struct QuadrantFaces {
    int w = -1, n = -1, s = -1, e = -1;
};

inline QuadrantFaces quadrant_faces(const DecoratedDiagram& d, const FaceStructure& fs,
                                    CrossingIdx c) {
    enum Slot { AOUT = 0, BOUT = 1, AIN = 2, BIN = 3 };
    QuadrantFaces q;
    q.w = fs.face_of_dart[4 * c + AIN];
    q.e = fs.face_of_dart[4 * c + AOUT];
    q.n = fs.face_of_dart[4 * c + (d.sign_of(c) == 1 ? BOUT : BIN)];
    q.s = fs.face_of_dart[4 * c + (d.sign_of(c) == 1 ? BIN : BOUT)];
    return q;
}

// Square relation at a non-matched crossing: with p_1-variations evaluated
// through the theta route and the linking side through lk(.,L(D,m)),
//   D1 = p1'(w,N) + p1'(w,S) - p1'(w,E),
//   D2 = lk(L(D,m), L(N,w)) + lk(L(D,m), L(S,E)),
// the relation D1 = 8 D2 = -8 sigma(d) J_{j(d)i(d)} must hold.
inline bool square_relation_check(const DecoratedDiagram& d, CrossingIdx x,
                                  std::mt19937_64& rng) {
    if (!d.has_matching()) throw InvalidMatching("square_relation_check needs a matching");
    if (d.is_matched(x)) throw InvalidSite("the square relation applies to unmatched crossings");
    const FaceStructure fs = d.faces();
    const QuadrantFaces q = quadrant_faces(d, fs, x);
    const RationalMatrix J = d.inverse_intersection();
    const FlowCycle L = L_cycle(d);

    auto wpath = [&](int from, int to, int detours) {
        WPath p;
        p.alpha_hits = beta_walk_hits(d, fs, from, to, rng, detours);
        return p;
    };

    const Rational d2 = lk_with_L_w(d, L, wpath(q.w, q.n, 0)) +
                        lk_with_L_w(d, L, wpath(q.e, q.s, 0));
    const Rational d1 = 4 * theta_delta_w(d, wpath(q.w, q.n, 1)) +
                        4 * theta_delta_w(d, wpath(q.w, q.s, 0)) -
                        4 * theta_delta_w(d, wpath(q.w, q.e, 1));
    const Rational pinned = -8 * d.sign_of(x) * J.at(d.beta_of(x), d.alpha_of(x));
    return d1 == 8 * d2 && d1 == pinned;
}

}  // namespace hdg
