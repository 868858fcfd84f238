#pragma once

#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"
#include "hdg/layout.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace hdg {

// A bigon birth pushes a finger of the beta arc across a shared face and
// through the alpha arc, creating consecutive crossings e and f (e first
// along beta) with sigma(f) = -sigma(e). The site names the two face sides;
// everything else is forced: with the face on the left of the alpha arc the
// finger crosses it left-to-right, so sigma(e) = -1, and the chord layout in
// the face disk puts e first along alpha exactly when the boundary walk
// traverses the two arcs with opposite forward flags (then both bigon arcs
// run from e to f and ell_2, e shift by +J_{ji}/2; equal flags give -J_{ji}/2).
struct BigonSite {
    ArcRef alpha_arc;
    bool alpha_forward = true;
    ArcRef beta_arc;
    bool beta_forward = true;
};

inline bool bigon_same_start(const BigonSite& s) { return s.alpha_forward != s.beta_forward; }

inline std::vector<BigonSite> bigon_sites(const DecoratedDiagram& d, const FaceStructure& fs) {
    (void)d;
    std::vector<BigonSite> sites;
    for (const auto& face : fs.faces) {
        for (const auto& sa : face.sides) {
            if (sa.arc.beta) continue;
            for (const auto& sb : face.sides) {
                if (!sb.arc.beta) continue;
                sites.push_back({sa.arc, sa.forward, sb.arc, sb.forward});
            }
        }
    }
    return sites;
}

inline DecoratedDiagram bigon_birth(const DecoratedDiagram& d, const BigonSite& site) {
    if (site.alpha_arc.beta || !site.beta_arc.beta) throw InvalidSite("bigon arcs mis-typed");
    const FaceStructure fs = d.faces();
    bool found = false;
    for (const auto& face : fs.faces) {
        bool has_a = false, has_b = false;
        for (const auto& s : face.sides) {
            if (s.arc == site.alpha_arc && s.forward == site.alpha_forward) has_a = true;
            if (s.arc == site.beta_arc && s.forward == site.beta_forward) has_b = true;
        }
        if (has_a && has_b) {
            found = true;
            break;
        }
    }
    if (!found) throw InvalidSite("bigon arcs do not bound a common face with these sides");

    const bool e_first = bigon_same_start(site);
    const int sign_e = site.alpha_forward ? -1 : 1;
    const int sign_f = -sign_e;

    RawDiagram raw = d.to_raw();
    const std::string te = d.fresh_token("e");
    const std::string tf = d.fresh_token("f");

    {
        auto& lst = raw.alpha[site.alpha_arc.curve];
        const int pos = site.alpha_arc.pos;
        std::vector<std::string> pairt =
            e_first ? std::vector<std::string>{te, tf} : std::vector<std::string>{tf, te};
        lst.insert(lst.begin() + pos + 1, pairt.begin(), pairt.end());
    }
    {
        auto& lst = raw.beta[site.beta_arc.curve];
        const int pos = site.beta_arc.pos;
        const long long t0 = lst[pos].turning;
        // Same-start bigons carry d_e(|e,f|) = sigma(f)/2, opposite-start the
        // negative; the remaining rotation of the split arc stays at the end.
        const long long t_ef = e_first ? sign_f : -sign_f;
        lst[pos].turning = 0;
        RawBetaEntry entry_e{te, sign_e, t_ef};
        RawBetaEntry entry_f{tf, sign_f, t0 - t_ef};
        lst.insert(lst.begin() + pos + 1, {entry_e, entry_f});
    }
    return DecoratedDiagram::build(raw);
}

// A two-sided face (one alpha arc, one beta arc between the same pair of
// crossings) that may be removed; refused when a matched crossing would
// disappear, when a curve would be emptied, or when the stored rotation of
// the bigon's beta arc is not the one a bigon isotopy removes.
struct BigonFace {
    ArcRef alpha_arc;
    ArcRef beta_arc;
    bool same_start = true;
};

inline std::vector<BigonFace> bigon_faces(const DecoratedDiagram& d, const FaceStructure& fs) {
    std::vector<BigonFace> out;
    for (const auto& face : fs.faces) {
        if (face.sides.size() != 2) continue;
        const auto& s0 = face.sides[0];
        const auto& s1 = face.sides[1];
        if (s0.arc.beta == s1.arc.beta) continue;
        const auto& sa = s0.arc.beta ? s1 : s0;
        const auto& sb = s0.arc.beta ? s0 : s1;
        BigonFace b;
        b.alpha_arc = sa.arc;
        b.beta_arc = sb.arc;
        b.same_start = sa.forward != sb.forward;
        out.push_back(b);
    }
    return out;
}

inline DecoratedDiagram bigon_death(const DecoratedDiagram& d, const BigonFace& site) {
    const CrossingIdx e = d.arc_tail(site.beta_arc);
    const CrossingIdx f = d.arc_head(site.beta_arc);
    if (e == f) throw InvalidSite("degenerate bigon");
    if (d.sign_of(e) != -d.sign_of(f)) throw InvalidSite("bigon crossings have equal signs");
    {
        const std::set<CrossingIdx> alpha_pair{d.arc_tail(site.alpha_arc),
                                               d.arc_head(site.alpha_arc)};
        if (alpha_pair != std::set<CrossingIdx>{e, f})
            throw InvalidSite("face sides do not join the same two crossings");
    }
    if (d.has_matching() && (d.is_matched(e) || d.is_matched(f)))
        throw InvalidSite("bigon contains a matched crossing");
    if (d.alpha_order(d.alpha_of(e)).size() <= 2 || d.beta_order(d.beta_of(e)).size() <= 2)
        throw InvalidSite("removing the bigon would empty a curve");

    const long long t_ef = d.turning(site.beta_arc.curve, site.beta_arc.pos);
    const long long expected = site.same_start ? d.sign_of(f) : -d.sign_of(f);
    if (t_ef != expected)
        throw InvalidSite("beta arc of the bigon carries extra rotation");

    RawDiagram raw = d.to_raw();
    {
        auto& lst = raw.alpha[d.alpha_of(e)];
        lst.erase(std::remove_if(lst.begin(), lst.end(),
                                 [&](const std::string& t) {
                                     return t == d.token(e) || t == d.token(f);
                                 }),
                  lst.end());
    }
    {
        auto& lst = raw.beta[d.beta_of(e)];
        const int j = d.beta_of(e);
        const int pe = d.crossing(e).beta_pos;
        const int pf = d.crossing(f).beta_pos;
        const int len = static_cast<int>(lst.size());
        const int prev = (pe + len - 1) % len;
        // Merge the three arcs around the bigon, keeping downstream degrees.
        const long long merged =
            d.turning(j, prev) + d.turning(j, pe) + d.turning(j, pf);
        lst[prev].turning = merged;
        std::vector<RawBetaEntry> kept;
        for (int p = 0; p < len; ++p)
            if (p != pe && p != pf) kept.push_back(lst[p]);
        // The merged turning must land on the arc leaving the predecessor.
        // After erasing e and f the predecessor keeps its entry; its turning
        // was already set above (entries are value pairs, order preserved).
        lst = kept;
    }
    return DecoratedDiagram::build(raw);
}

// Band sum of beta_target with the positive-side parallel of beta_over along
// a junction in a shared face.
struct SlideSite {
    ArcRef target_arc;  // on the curve being replaced (paper's beta_1)
    ArcRef over_arc;    // on the curve being doubled (paper's beta_2)
};

inline std::vector<SlideSite> slide_sites(const DecoratedDiagram& d, const FaceStructure& fs) {
    (void)d;
    std::vector<SlideSite> sites;
    for (const auto& face : fs.faces) {
        for (const auto& st : face.sides) {
            // The band joins the positive sides of both curves; with the
            // normal-first orientation convention the positive side of a
            // curve is the right of its travel direction, so the junction
            // face must appear on the right of both arcs.
            if (!st.arc.beta || st.forward) continue;
            for (const auto& so : face.sides) {
                if (!so.arc.beta || so.arc.curve == st.arc.curve) continue;
                if (so.forward) continue;
                sites.push_back({st.arc, so.arc});
            }
        }
    }
    return sites;
}

inline DecoratedDiagram handle_slide_beta(const DecoratedDiagram& d, const SlideSite& site) {
    if (!d.has_matching()) throw InvalidMatching("handle slide bookkeeping needs a matching");
    const int jt = site.target_arc.curve;
    const int jo = site.over_arc.curve;
    if (jt == jo) throw InvalidSite("cannot slide a curve over itself");

    const FaceStructure fs = d.faces();
    const int face = fs.right_of[d.arc_index(site.over_arc)];
    if (face < 0) throw InvalidSite("over arc has no positive-side face");
    if (fs.right_of[d.arc_index(site.target_arc)] != face)
        throw InvalidSite("junction face must lie on the positive side of both arcs");

    const auto& over_order = d.beta_order(jo);
    const int q = static_cast<int>(over_order.size());
    const int vpos = site.over_arc.pos;
    const CrossingIdx m_over = d.matched_on_beta(jo);

    RawDiagram raw = d.to_raw();

    // Parallel copies c+ sit next to c on the alpha curves: just after c when
    // sigma(c) = +1, just before when sigma(c) = -1.
    std::vector<std::string> plus_token(d.num_crossings());
    {
        std::set<std::string> used;
        for (CrossingIdx c = 0; c < d.num_crossings(); ++c) used.insert(d.token(c));
        for (CrossingIdx c : over_order) {
            std::string t = d.token(c) + "p";
            while (used.count(t)) t += "p";
            used.insert(t);
            plus_token[c] = t;
        }
    }
    for (CrossingIdx c : over_order) {
        auto& lst = raw.alpha[d.alpha_of(c)];
        auto it = std::find(lst.begin(), lst.end(), d.token(c));
        lst.insert(d.sign_of(c) == 1 ? it + 1 : it, plus_token[c]);
    }

    // Assemble the new beta_target listing with the parallel block spliced in.
    {
        const auto& old = raw.beta[jt];
        const int len = static_cast<int>(old.size());
        const int p = site.target_arc.pos;
        std::vector<RawBetaEntry> fresh;
        for (int k = 0; k <= p; ++k) fresh.push_back(old[k]);
        fresh.back().turning = d.turning(jt, p) - 1;  // junction entry turn

        std::vector<RawBetaEntry> block;
        for (int s = 0; s < q; ++s) {
            const CrossingIdx c = over_order[(vpos + 1 + s) % q];
            const long long turn = s + 1 < q
                                       ? d.turning(jo, (vpos + 1 + s) % q)
                                       : d.turning(jo, vpos) - 1;  // junction exit turn
            block.push_back({plus_token[c], d.sign_of(c), turn});
        }
        // The parallel detours around the matched crossing of the over curve:
        // +1 half-turn on the arcs entering and leaving m_over's copy.
        const int m_off = (d.crossing(m_over).beta_pos - (vpos + 1) + q) % q;
        if (m_off == 0)
            fresh.back().turning += 1;
        else
            block[m_off - 1].turning += 1;
        block[m_off].turning += 1;

        for (auto& e : block) fresh.push_back(e);
        for (int k = p + 1; k < len; ++k) fresh.push_back(old[k]);
        raw.beta[jt] = fresh;
    }
    return DecoratedDiagram::build(raw);
}

// Block sum of two diagrams; the curves of `b` are appended after those of
// `a` and clashing crossing tokens are renamed.
inline DecoratedDiagram connected_sum(const DecoratedDiagram& a, const DecoratedDiagram& b) {
    RawDiagram raw = a.to_raw();
    const RawDiagram rb = b.to_raw();
    raw.genus = a.genus() + b.genus();

    std::set<std::string> used;
    for (CrossingIdx c = 0; c < a.num_crossings(); ++c) used.insert(a.token(c));
    std::map<std::string, std::string> rename;
    for (CrossingIdx c = 0; c < b.num_crossings(); ++c) {
        std::string t = b.token(c);
        while (used.count(t)) t += "b";
        used.insert(t);
        rename[b.token(c)] = t;
    }

    for (const auto& curve : rb.alpha) {
        std::vector<std::string> lst;
        for (const auto& t : curve) lst.push_back(rename[t]);
        raw.alpha.push_back(lst);
    }
    for (const auto& curve : rb.beta) {
        auto lst = curve;
        for (auto& e : lst) e.token = rename[e.token];
        raw.beta.push_back(lst);
    }
    if (a.has_matching() && b.has_matching())
        for (const auto& t : rb.matching) raw.matching.push_back(rename[t]);
    else
        raw.matching.clear();
    return DecoratedDiagram::build(raw);
}

inline DecoratedDiagram stabilize(const DecoratedDiagram& d) {
    return connected_sum(d, genus_one_s3());
}

}  // namespace hdg
