#pragma once

#include "hdg/errors.hpp"
#include "hdg/matrix.hpp"
#include "hdg/rational.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hdg {

using CrossingIdx = int;

struct RawBetaEntry {
    std::string token;
    int sign = 1;        // +1 or -1
    long long turning = 0;  // half-turn count of the arc leaving this crossing
};

// Unvalidated diagram data, as read from an HDG file or assembled by a move.
struct RawDiagram {
    int genus = 0;
    std::vector<std::vector<std::string>> alpha;      // g cyclic token lists
    std::vector<std::vector<RawBetaEntry>> beta;      // g cyclic entry lists
    std::vector<std::string> matching;                // size g or empty; entry j lies on beta_j
};

struct CrossingInfo {
    std::string token;
    int alpha_curve = -1;  // i(c), 0-based
    int beta_curve = -1;   // j(c), 0-based
    int alpha_pos = -1;    // index in alpha_order(i(c))
    int beta_pos = -1;     // index in beta_order(j(c))
    int sign = 1;          // sigma(c)
};

// An arc between consecutive crossings of one curve:
// order[curve][pos] -> order[curve][(pos+1) % len].
struct ArcRef {
    bool beta = false;
    int curve = 0;
    int pos = 0;
    friend bool operator==(const ArcRef& a, const ArcRef& b) {
        return a.beta == b.beta && a.curve == b.curve && a.pos == b.pos;
    }
    friend bool operator<(const ArcRef& a, const ArcRef& b) {
        return std::tie(a.beta, a.curve, a.pos) < std::tie(b.beta, b.curve, b.pos);
    }
};

struct FaceSide {
    ArcRef arc;
    bool forward = true;  // whether the face-boundary walk traverses the arc along its orientation
};

struct Face {
    std::vector<FaceSide> sides;
};

struct FaceStructure {
    std::vector<Face> faces;
    // Index of the face lying on the left (resp. right) of each arc's forward
    // direction; arrays indexed by arc_index().
    std::vector<int> left_of;
    std::vector<int> right_of;
    // Face owning each departure dart, indexed by 4*crossing + slot with
    // slots (a-out, b-out, a-in, b-in); the face of a dart is the wedge
    // counterclockwise of it.
    std::vector<int> face_of_dart;
};

// A validated decorated Heegaard diagram: curves, signs, matching, layout.
// Immutable after construction; moves build a fresh RawDiagram and revalidate.
class DecoratedDiagram {
  public:
    static DecoratedDiagram build(const RawDiagram& raw) { return DecoratedDiagram(raw); }

    int genus() const { return genus_; }
    int num_crossings() const { return static_cast<int>(crossings_.size()); }
    const CrossingInfo& crossing(CrossingIdx c) const { return crossings_[c]; }
    int alpha_of(CrossingIdx c) const { return crossings_[c].alpha_curve; }
    int beta_of(CrossingIdx c) const { return crossings_[c].beta_curve; }
    int sign_of(CrossingIdx c) const { return crossings_[c].sign; }
    const std::string& token(CrossingIdx c) const { return crossings_[c].token; }

    CrossingIdx by_token(const std::string& t) const {
        auto it = token_index_.find(t);
        return it == token_index_.end() ? -1 : it->second;
    }

    const std::vector<CrossingIdx>& alpha_order(int i) const { return alpha_orders_[i]; }
    const std::vector<CrossingIdx>& beta_order(int j) const { return beta_orders_[j]; }
    long long turning(int j, int pos) const { return turnings_[j][pos]; }

    bool has_matching() const { return !matching_.empty(); }
    // m_j, the matched crossing on beta_j.
    CrossingIdx matched_on_beta(int j) const { return matching_[j]; }
    // m_{rho(i)}, the matched crossing on alpha_i.
    CrossingIdx matched_on_alpha(int i) const { return matched_on_alpha_[i]; }
    bool is_matched(CrossingIdx c) const {
        return has_matching() && matching_[beta_of(c)] == c;
    }

    // Entry (j,i) = <alpha_i, beta_j> = sum of crossing signs.
    RationalMatrix intersection_matrix() const {
        RationalMatrix a(genus_);
        for (const auto& c : crossings_) a.at(c.beta_curve, c.alpha_curve) += c.sign;
        return a;
    }

    // J with J(j,i) satisfying sum_i J_{ji} <alpha_i, beta_k> = delta_{jk};
    // throws SingularIntersection if the diagram is not a Q-sphere diagram.
    RationalMatrix inverse_intersection() const {
        return intersection_matrix().transposed().inverse();
    }

    int arc_index(const ArcRef& a) const {
        int base = a.beta ? num_crossings() : 0;
        for (int k = 0; k < a.curve; ++k)
            base += static_cast<int>((a.beta ? beta_orders_ : alpha_orders_)[k].size());
        return base + a.pos;
    }
    int num_arcs() const { return 2 * num_crossings(); }

    CrossingIdx arc_tail(const ArcRef& a) const {
        const auto& ord = a.beta ? beta_orders_[a.curve] : alpha_orders_[a.curve];
        return ord[a.pos];
    }
    CrossingIdx arc_head(const ArcRef& a) const {
        const auto& ord = a.beta ? beta_orders_[a.curve] : alpha_orders_[a.curve];
        return ord[(a.pos + 1) % ord.size()];
    }

    FaceStructure faces() const;

    RawDiagram to_raw() const {
        RawDiagram raw;
        raw.genus = genus_;
        raw.alpha.resize(genus_);
        raw.beta.resize(genus_);
        for (int i = 0; i < genus_; ++i)
            for (CrossingIdx c : alpha_orders_[i]) raw.alpha[i].push_back(token(c));
        for (int j = 0; j < genus_; ++j)
            for (size_t p = 0; p < beta_orders_[j].size(); ++p) {
                CrossingIdx c = beta_orders_[j][p];
                raw.beta[j].push_back({token(c), sign_of(c), turnings_[j][p]});
            }
        if (has_matching())
            for (int j = 0; j < genus_; ++j) raw.matching.push_back(token(matching_[j]));
        return raw;
    }

    // Fresh token not colliding with any crossing token of this diagram.
    std::string fresh_token(const std::string& stem) const {
        if (token_index_.find(stem) == token_index_.end()) return stem;
        for (int k = 1;; ++k) {
            std::string t = stem + std::to_string(k);
            if (token_index_.find(t) == token_index_.end()) return t;
        }
    }

    bool same_combinatorics(const DecoratedDiagram& o) const {
        if (genus_ != o.genus_) return false;
        auto tokens = [](const DecoratedDiagram& d, const std::vector<std::vector<CrossingIdx>>& ords) {
            std::vector<std::vector<std::pair<std::string, int>>> out;
            for (const auto& ord : ords) {
                std::vector<std::pair<std::string, int>> cur;
                for (CrossingIdx c : ord) cur.push_back({d.token(c), d.sign_of(c)});
                out.push_back(cur);
            }
            return out;
        };
        if (tokens(*this, alpha_orders_) != tokens(o, o.alpha_orders_)) return false;
        if (tokens(*this, beta_orders_) != tokens(o, o.beta_orders_)) return false;
        std::vector<std::string> m1, m2;
        for (CrossingIdx c : matching_) m1.push_back(token(c));
        for (CrossingIdx c : o.matching_) m2.push_back(o.token(c));
        return m1 == m2;
    }

  private:
    explicit DecoratedDiagram(const RawDiagram& raw);
    void validate_faces() const;

    int genus_ = 0;
    std::vector<CrossingInfo> crossings_;
    std::map<std::string, CrossingIdx> token_index_;
    std::vector<std::vector<CrossingIdx>> alpha_orders_;
    std::vector<std::vector<CrossingIdx>> beta_orders_;
    std::vector<std::vector<long long>> turnings_;
    std::vector<CrossingIdx> matching_;          // per beta curve
    std::vector<CrossingIdx> matched_on_alpha_;  // per alpha curve
};

inline DecoratedDiagram::DecoratedDiagram(const RawDiagram& raw) {
    genus_ = raw.genus;
    if (genus_ <= 0) throw ParseError(0, "genus must be positive");
    if (static_cast<int>(raw.alpha.size()) != genus_ ||
        static_cast<int>(raw.beta.size()) != genus_)
        throw MissingCrossing("expected " + std::to_string(genus_) + " alpha and beta curves");

    for (int i = 0; i < genus_; ++i) {
        if (raw.alpha[i].empty())
            throw MissingCrossing("alpha " + std::to_string(i + 1) + " has no crossings");
        if (raw.beta[i].empty())
            throw MissingCrossing("beta " + std::to_string(i + 1) + " has no crossings");
    }

    // Crossings are created from the beta listings (which carry the signs),
    // then matched against the alpha listings.
    alpha_orders_.resize(genus_);
    beta_orders_.resize(genus_);
    turnings_.resize(genus_);
    for (int j = 0; j < genus_; ++j) {
        long long total_turning = 0;
        for (const auto& e : raw.beta[j]) {
            if (token_index_.count(e.token))
                throw DuplicateCrossing("crossing '" + e.token + "' listed twice on beta curves");
            if (e.sign != 1 && e.sign != -1)
                throw ParseError(0, "crossing '" + e.token + "' has sign outside {+1,-1}");
            CrossingIdx idx = static_cast<CrossingIdx>(crossings_.size());
            CrossingInfo info;
            info.token = e.token;
            info.beta_curve = j;
            info.beta_pos = static_cast<int>(beta_orders_[j].size());
            info.sign = e.sign;
            crossings_.push_back(info);
            token_index_[e.token] = idx;
            beta_orders_[j].push_back(idx);
            turnings_[j].push_back(e.turning);
            total_turning += e.turning;
        }
        if (total_turning % 2 != 0)
            throw EulerCheckFailed("beta " + std::to_string(j + 1) +
                                   " has odd total half-turn count (degree must be an integer)");
    }
    for (int i = 0; i < genus_; ++i) {
        for (const auto& t : raw.alpha[i]) {
            auto it = token_index_.find(t);
            if (it == token_index_.end())
                throw MissingCrossing("crossing '" + t + "' appears on alpha " +
                                      std::to_string(i + 1) + " but on no beta curve");
            CrossingInfo& info = crossings_[it->second];
            if (info.alpha_curve != -1)
                throw DuplicateCrossing("crossing '" + t + "' listed twice on alpha curves");
            info.alpha_curve = i;
            info.alpha_pos = static_cast<int>(alpha_orders_[i].size());
            alpha_orders_[i].push_back(it->second);
        }
    }
    for (const auto& c : crossings_)
        if (c.alpha_curve == -1)
            throw MissingCrossing("crossing '" + c.token + "' appears on no alpha curve");

    if (!raw.matching.empty()) {
        if (static_cast<int>(raw.matching.size()) != genus_)
            throw InvalidMatching("matching must list exactly " + std::to_string(genus_) +
                                  " crossings");
        matching_.assign(genus_, -1);
        matched_on_alpha_.assign(genus_, -1);
        for (int j = 0; j < genus_; ++j) {
            auto it = token_index_.find(raw.matching[j]);
            if (it == token_index_.end())
                throw InvalidMatching("matching crossing '" + raw.matching[j] + "' is unknown");
            CrossingIdx c = it->second;
            if (beta_of(c) != j)
                throw InvalidMatching("matching entry " + std::to_string(j + 1) + " ('" +
                                      raw.matching[j] + "') does not lie on beta " +
                                      std::to_string(j + 1));
            matching_[j] = c;
            int i = alpha_of(c);
            if (matched_on_alpha_[i] != -1)
                throw InvalidMatching("two matching crossings lie on alpha " +
                                      std::to_string(i + 1));
            matched_on_alpha_[i] = c;
        }
    }

    validate_faces();
}

// Face extraction from the rotation system. Dart slots at a crossing, in
// counterclockwise order: sigma=+1 -> (a-out, b-out, a-in, b-in),
// sigma=-1 -> (a-out, b-in, a-in, b-out).
inline FaceStructure DecoratedDiagram::faces() const {
    enum Slot { AOUT = 0, BOUT = 1, AIN = 2, BIN = 3 };
    const int n = num_crossings();

    auto next_on = [&](bool beta, CrossingIdx c) {
        const auto& ord = beta ? beta_orders_[beta_of(c)] : alpha_orders_[alpha_of(c)];
        int pos = beta ? crossings_[c].beta_pos : crossings_[c].alpha_pos;
        return ord[(pos + 1) % ord.size()];
    };
    auto prev_on = [&](bool beta, CrossingIdx c) {
        const auto& ord = beta ? beta_orders_[beta_of(c)] : alpha_orders_[alpha_of(c)];
        int pos = beta ? crossings_[c].beta_pos : crossings_[c].alpha_pos;
        return ord[(pos + static_cast<int>(ord.size()) - 1) % ord.size()];
    };
    // Departing from slot s of crossing c: which crossing and slot do we arrive at?
    auto travel = [&](CrossingIdx c, int s) -> std::pair<CrossingIdx, int> {
        switch (s) {
            case AOUT: return {next_on(false, c), AIN};
            case AIN: return {prev_on(false, c), AOUT};
            case BOUT: return {next_on(true, c), BIN};
            default: return {prev_on(true, c), BOUT};
        }
    };
    // Previous slot counterclockwise (= next clockwise) in the rotation at c.
    auto prev_ccw = [&](CrossingIdx c, int s) -> int {
        if (sign_of(c) == 1) {
            switch (s) {
                case AOUT: return BIN;
                case BOUT: return AOUT;
                case AIN: return BOUT;
                default: return AIN;
            }
        }
        switch (s) {
            case AOUT: return BOUT;
            case BIN: return AOUT;
            case AIN: return BIN;
            default: return AIN;  // BOUT
        }
    };
    // The arc traversed when departing from slot s at crossing c, and whether
    // that traversal follows the arc's orientation.
    auto departed_arc = [&](CrossingIdx c, int s) -> FaceSide {
        FaceSide side;
        const CrossingInfo& info = crossings_[c];
        switch (s) {
            case AOUT:
                side.arc = {false, info.alpha_curve, info.alpha_pos};
                side.forward = true;
                break;
            case AIN: {
                CrossingIdx p = prev_on(false, c);
                side.arc = {false, info.alpha_curve, crossings_[p].alpha_pos};
                side.forward = false;
                break;
            }
            case BOUT:
                side.arc = {true, info.beta_curve, info.beta_pos};
                side.forward = true;
                break;
            default: {
                CrossingIdx p = prev_on(true, c);
                side.arc = {true, info.beta_curve, crossings_[p].beta_pos};
                side.forward = false;
                break;
            }
        }
        return side;
    };

    FaceStructure fs;
    fs.left_of.assign(num_arcs(), -1);
    fs.right_of.assign(num_arcs(), -1);
    fs.face_of_dart.assign(4 * n, -1);
    std::vector<bool> seen(4 * n, false);
    for (CrossingIdx c0 = 0; c0 < n; ++c0) {
        for (int s0 = 0; s0 < 4; ++s0) {
            if (seen[4 * c0 + s0]) continue;
            Face face;
            int face_id = static_cast<int>(fs.faces.size());
            CrossingIdx c = c0;
            int s = s0;
            do {
                seen[4 * c + s] = true;
                fs.face_of_dart[4 * c + s] = face_id;
                FaceSide side = departed_arc(c, s);
                int ai = arc_index(side.arc);
                // A face-left walk keeps the face on the left of travel, so a
                // forward traversal marks this face as left_of the arc.
                (side.forward ? fs.left_of : fs.right_of)[ai] = face_id;
                face.sides.push_back(side);
                auto [c2, s2] = travel(c, s);
                c = c2;
                s = prev_ccw(c2, s2);
            } while (!(c == c0 && s == s0));
            fs.faces.push_back(std::move(face));
        }
    }
    return fs;
}

inline void DecoratedDiagram::validate_faces() const {
    // The curve system may split into connected components (connected sums are
    // juxtapositions); each component must be a genus-g_k sub-diagram with
    // V_k - E_k + F_k = 2 - 2 g_k and g_k curves of each family, and the
    // component genera must add up to the diagram genus.
    const int n = num_crossings();
    std::vector<int> comp(n, -1);
    int num_comp = 0;
    for (CrossingIdx root = 0; root < n; ++root) {
        if (comp[root] != -1) continue;
        const int id = num_comp++;
        std::vector<CrossingIdx> stack{root};
        comp[root] = id;
        while (!stack.empty()) {
            CrossingIdx c = stack.back();
            stack.pop_back();
            for (bool beta : {false, true}) {
                const auto& o = beta ? beta_orders_[beta_of(c)] : alpha_orders_[alpha_of(c)];
                int pos = beta ? crossings_[c].beta_pos : crossings_[c].alpha_pos;
                for (int nb_idx : {0, 1}) {
                    CrossingIdx nb =
                        o[(pos + (nb_idx ? 1 : static_cast<int>(o.size()) - 1)) % o.size()];
                    if (comp[nb] == -1) {
                        comp[nb] = id;
                        stack.push_back(nb);
                    }
                }
            }
        }
    }

    std::vector<int> verts(num_comp, 0), face_count(num_comp, 0), alphas(num_comp, 0),
        betas(num_comp, 0);
    for (int c = 0; c < n; ++c) ++verts[comp[c]];
    const FaceStructure fs = faces();
    for (const auto& face : fs.faces)
        ++face_count[comp[arc_tail(face.sides.front().arc)]];
    for (int i = 0; i < genus_; ++i) ++alphas[comp[alpha_orders_[i].front()]];
    for (int j = 0; j < genus_; ++j) ++betas[comp[beta_orders_[j].front()]];

    int genus_sum = 0;
    for (int k = 0; k < num_comp; ++k) {
        const int euler = verts[k] - 2 * verts[k] + face_count[k];
        if (euler % 2 != 0 || euler > 2)
            throw EulerCheckFailed("component has Euler characteristic " +
                                   std::to_string(euler));
        const int gk = (2 - euler) / 2;
        if (alphas[k] != gk || betas[k] != gk)
            throw EulerCheckFailed(
                "component carries " + std::to_string(alphas[k]) + " alpha and " +
                std::to_string(betas[k]) + " beta curves but has genus " + std::to_string(gk));
        genus_sum += gk;
    }
    if (genus_sum != genus_)
        throw EulerCheckFailed("component genera add up to " + std::to_string(genus_sum) +
                               ", expected " + std::to_string(genus_));
}

// The one-crossing genus-one diagram of S^3.
inline DecoratedDiagram genus_one_s3() {
    RawDiagram raw;
    raw.genus = 1;
    raw.alpha = {{"s"}};
    raw.beta = {{{"s", 1, 0}}};
    raw.matching = {"s"};
    return DecoratedDiagram::build(raw);
}

}  // namespace hdg
