#pragma once

#include "hdg/diagram.hpp"
#include "hdg/errors.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

namespace hdg {

// HDG text format (line oriented, '#' starts a comment):
//   genus <g>
//   alpha <i>: <id> <id> ...
//   beta <j>: <id>:<+|->:<t> ...
//   matching: <id_1> ... <id_g>
// where <t> is the integer half-turn count of the arc leaving the crossing.
namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

inline bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace detail

inline RawDiagram parse_hdg_raw(const std::string& text) {
    RawDiagram raw;
    bool saw_genus = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto words = detail::split_ws(line);
        if (words.empty()) continue;

        if (words[0] == "genus") {
            if (saw_genus) throw ParseError(lineno, "duplicate genus line");
            long long g;
            if (words.size() != 2 || !detail::parse_int(words[1], g) || g <= 0)
                throw ParseError(lineno, "expected 'genus <positive integer>'");
            raw.genus = static_cast<int>(g);
            raw.alpha.resize(raw.genus);
            raw.beta.resize(raw.genus);
            saw_genus = true;
            continue;
        }
        if (!saw_genus) throw ParseError(lineno, "the genus line must come first");

        if (words[0] == "alpha" || words[0] == "beta") {
            const bool is_beta = words[0] == "beta";
            if (words.size() < 2) throw ParseError(lineno, "missing curve index");
            std::string idx_word = words[1];
            if (!idx_word.empty() && idx_word.back() == ':') idx_word.pop_back();
            long long idx;
            if (!detail::parse_int(idx_word, idx) || idx < 1 || idx > raw.genus)
                throw ParseError(lineno, "curve index out of range 1.." +
                                             std::to_string(raw.genus));
            auto& alpha_list = raw.alpha[idx - 1];
            auto& beta_list = raw.beta[idx - 1];
            if ((is_beta && !beta_list.empty()) || (!is_beta && !alpha_list.empty()))
                throw ParseError(lineno, "curve listed twice");
            for (size_t k = 2; k < words.size(); ++k) {
                if (!is_beta) {
                    alpha_list.push_back(words[k]);
                    continue;
                }
                // <id>:<+|->:<t>
                const std::string& w = words[k];
                auto p1 = w.find(':');
                auto p2 = p1 == std::string::npos ? std::string::npos : w.find(':', p1 + 1);
                if (p1 == std::string::npos || p2 == std::string::npos)
                    throw ParseError(lineno, "expected <id>:<+|->:<t>, got '" + w + "'");
                RawBetaEntry e;
                e.token = w.substr(0, p1);
                std::string sgn = w.substr(p1 + 1, p2 - p1 - 1);
                if (sgn == "+")
                    e.sign = 1;
                else if (sgn == "-")
                    e.sign = -1;
                else
                    throw ParseError(lineno, "bad sign '" + sgn + "' in '" + w + "'");
                if (e.token.empty()) throw ParseError(lineno, "empty crossing id in '" + w + "'");
                if (!detail::parse_int(w.substr(p2 + 1), e.turning))
                    throw ParseError(lineno, "bad turning in '" + w + "'");
                beta_list.push_back(e);
            }
            continue;
        }
        if (words[0] == "matching:" || words[0] == "matching") {
            size_t start = 1;
            if (words[0] == "matching" && words.size() > 1 && words[1] == ":") start = 2;
            if (!raw.matching.empty()) throw ParseError(lineno, "duplicate matching line");
            for (size_t k = start; k < words.size(); ++k) raw.matching.push_back(words[k]);
            if (raw.matching.empty()) throw ParseError(lineno, "empty matching line");
            continue;
        }
        throw ParseError(lineno, "unrecognized directive '" + words[0] + "'");
    }
    if (!saw_genus) throw ParseError(lineno, "missing genus line");
    return raw;
}

inline DecoratedDiagram parse_hdg(const std::string& text) {
    return DecoratedDiagram::build(parse_hdg_raw(text));
}

inline std::string to_hdg(const DecoratedDiagram& d) {
    std::ostringstream out;
    out << "genus " << d.genus() << "\n";
    for (int i = 0; i < d.genus(); ++i) {
        out << "alpha " << i + 1 << ":";
        for (CrossingIdx c : d.alpha_order(i)) out << " " << d.token(c);
        out << "\n";
    }
    for (int j = 0; j < d.genus(); ++j) {
        out << "beta " << j + 1 << ":";
        const auto& ord = d.beta_order(j);
        for (size_t p = 0; p < ord.size(); ++p)
            out << " " << d.token(ord[p]) << ":" << (d.sign_of(ord[p]) > 0 ? '+' : '-') << ":"
                << d.turning(j, static_cast<int>(p));
        out << "\n";
    }
    if (d.has_matching()) {
        out << "matching:";
        for (int j = 0; j < d.genus(); ++j) out << " " << d.token(d.matched_on_beta(j));
        out << "\n";
    }
    return out.str();
}

}  // namespace hdg
