#pragma once

#include "hdg/errors.hpp"
#include "hdg/rational.hpp"

#include <map>
#include <random>
#include <sstream>
#include <vector>

namespace hdg {

// Seifert linking data of a genus-g surface: linking[i][j] = lk(z_i^+, z_j)
// for a geometric symplectic basis z_1,...,z_2g with <z_{2i-1}, z_{2i}> = 1.
struct SeifertData {
    int genus = 0;                                // g(Sigma)
    std::vector<std::vector<Integer>> linking;    // 2g x 2g

    const Integer& lk(int i, int j) const { return linking[i - 1][j - 1]; }  // 1-based
};

// <z_i, z_j> for the standard symplectic pairing.
inline int symplectic_pairing(int i, int j) {
    if (j == i + 1 && i % 2 == 1) return 1;
    if (i == j + 1 && j % 2 == 1) return -1;
    return 0;
}

inline int conjugate_index(int i) { return i % 2 == 1 ? i + 1 : i - 1; }

inline void check_symplectic(const SeifertData& s) {
    const int n = 2 * s.genus;
    if (s.genus <= 0 || static_cast<int>(s.linking.size()) != n)
        throw SymplecticViolation("linking matrix must be 2g x 2g with g >= 1");
    for (const auto& row : s.linking)
        if (static_cast<int>(row.size()) != n)
            throw SymplecticViolation("linking matrix must be square");
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (s.lk(i, j) - s.lk(j, i) != symplectic_pairing(i, j))
                throw SymplecticViolation(
                    "lk(z_i^+,z_j) - lk(z_j^+,z_i) must equal the symplectic pairing at (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
}

// lambda' = sum_{i,r} ( lk(z+_{2i},z_{2r}) lk(z+_{2i-1},z_{2r-1})
//                      - lk(z+_{2i},z_{2r-1}) lk(z+_{2i-1},z_{2r}) ).
inline Integer lambda_prime(const SeifertData& s) {
    check_symplectic(s);
    Integer acc = 0;
    for (int i = 1; i <= s.genus; ++i)
        for (int r = 1; r <= s.genus; ++r)
            acc += s.lk(2 * i, 2 * r) * s.lk(2 * i - 1, 2 * r - 1) -
                   s.lk(2 * i, 2 * r - 1) * s.lk(2 * i - 1, 2 * r);
    return acc;
}

// Second route to 2 lambda': sum lk(z_r^+,z_i) lk(z_rbar^+,z_ibar) <z_i,z_ibar> <z_r,z_rbar>.
inline Integer two_lambda_prime_symmetrized(const SeifertData& s) {
    check_symplectic(s);
    Integer acc = 0;
    const int n = 2 * s.genus;
    for (int i = 1; i <= n; ++i)
        for (int r = 1; r <= n; ++r)
            acc += s.lk(r, i) * s.lk(conjugate_index(r), conjugate_index(i)) *
                   symplectic_pairing(i, conjugate_index(i)) *
                   symplectic_pairing(r, conjugate_index(r));
    return acc;
}

// lambda'_+ = sum lk(z_r^+,z_i) lk(z_ibar^+,z_rbar) <z_i,z_ibar> <z_r,z_rbar> = 2 lambda' - g.
inline Integer lambda_prime_plus(const SeifertData& s) {
    check_symplectic(s);
    Integer acc = 0;
    const int n = 2 * s.genus;
    for (int i = 1; i <= n; ++i)
        for (int r = 1; r <= n; ++r)
            acc += s.lk(r, i) * s.lk(conjugate_index(i), conjugate_index(r)) *
                   symplectic_pairing(i, conjugate_index(i)) *
                   symplectic_pairing(r, conjugate_index(r));
    return acc;
}

// Integer Laurent polynomial with finite support.
struct LaurentPolynomial {
    std::map<int, Integer> coeff;  // exponent -> coefficient

    void set(int e, Integer v) {
        if (v == 0)
            coeff.erase(e);
        else
            coeff[e] = std::move(v);
    }
    Integer at(int e) const {
        auto it = coeff.find(e);
        return it == coeff.end() ? Integer(0) : it->second;
    }
    bool operator==(const LaurentPolynomial& o) const { return coeff == o.coeff; }

    LaurentPolynomial reciprocal() const {  // t -> 1/t
        LaurentPolynomial out;
        for (const auto& [e, v] : coeff) out.coeff[-e] = v;
        return out;
    }
    Rational evaluate(const Rational& t) const {
        Rational acc = 0;
        for (const auto& [e, v] : coeff) {
            Rational p = 1;
            for (int k = 0; k < (e < 0 ? -e : e); ++k) p *= t;
            acc += Rational(v) * (e < 0 ? 1 / p : p);
        }
        return acc;
    }
    LaurentPolynomial derivative() const {
        LaurentPolynomial out;
        for (const auto& [e, v] : coeff)
            if (e != 0) out.coeff[e - 1] = v * e;
        return out;
    }
    std::string str() const {
        if (coeff.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
            const auto& [e, v] = *it;
            if (!first) out << (v > 0 ? " + " : " - ");
            else if (v < 0)
                out << "-";
            first = false;
            const Integer a = boost::multiprecision::abs(v);
            if (a != 1 || e == 0) out << a.str();
            if (e != 0) {
                if (a != 1) out << "*";
                out << "t";
                if (e != 1) out << "^" << e;
            }
        }
        return out.str();
    }
};

// Alexander polynomial Delta(t) = t^{-g} det[ t lk(z_r^+,z_s) - lk(z_s^+,z_r) ],
// normalized so that Delta(1) = 1 and Delta(t) = Delta(1/t); both identities
// are consequences of the symplectic constraint and are enforced here.
inline LaurentPolynomial alexander(const SeifertData& s) {
    check_symplectic(s);
    const int n = 2 * s.genus;

    // det of the degree-1 polynomial matrix by exact interpolation at
    // n+1 integer points.
    auto det_at = [&](const Rational& t) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                m[r][c] = t * Rational(s.linking[r][c]) - Rational(s.linking[c][r]);
        Rational det = 1;
        for (int col = 0; col < n; ++col) {
            int pivot = col;
            while (pivot < n && m[pivot][col] == 0) ++pivot;
            if (pivot == n) return Rational(0);
            if (pivot != col) {
                std::swap(m[pivot], m[col]);
                det = -det;
            }
            det *= m[col][col];
            for (int r = col + 1; r < n; ++r) {
                if (m[r][col] == 0) continue;
                const Rational f = m[r][col] / m[col][col];
                for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            }
        }
        return det;
    };

    // Newton's divided differences on t = 0, 1, ..., n.
    std::vector<Rational> x(n + 1), table(n + 1);
    for (int k = 0; k <= n; ++k) {
        x[k] = k;
        table[k] = det_at(x[k]);
    }
    for (int level = 1; level <= n; ++level)
        for (int k = n; k >= level; --k)
            table[k] = (table[k] - table[k - 1]) / (x[k] - x[k - level]);
    // Expand the Newton form into monomial coefficients.
    std::vector<Rational> poly(n + 1, 0);
    for (int k = n; k >= 0; --k) {
        for (int j = n; j > 0; --j) poly[j] = poly[j - 1] - x[k] * poly[j];
        poly[0] = table[k] - x[k] * poly[0];
    }

    LaurentPolynomial delta;
    for (int j = 0; j <= n; ++j) {
        const Rational& c = poly[j];
        if (c == 0) continue;
        if (boost::multiprecision::denominator(c) != 1)
            throw SymplecticViolation("Alexander determinant is not integral");
        delta.set(j - s.genus, boost::multiprecision::numerator(c));
    }
    if (delta.evaluate(1) != 1)
        throw SymplecticViolation("Alexander normalization Delta(1) = 1 failed");
    if (!(delta == delta.reciprocal()))
        throw SymplecticViolation("Alexander symmetry Delta(t) = Delta(1/t) failed");
    return delta;
}

// (1/2) Delta''(1), which equals lambda'.
inline Rational delta_second_derivative_at_one(const SeifertData& s) {
    return alexander(s).derivative().derivative().evaluate(1) / 2;
}

// lambda(M(K;1/n)) - lambda(M) = n (lambda(M(K)) - lambda(M)) = n lambda'.
inline Integer casson_surgery_delta(const SeifertData& s, long long n) {
    if (n == 0) throw DiagramError("surgery coefficient 1/n requires n != 0");
    return Integer(n) * lambda_prime(s);
}

// p_1 variation constant for a genus-g surface: 4 g (g-1).
inline long long p1_genus_constant(long long g) { return 4 * g * (g - 1); }

// Random symplectic-compatible linking matrix: free upper triangle and
// diagonal in [-5,5], lower triangle forced by the constraint.
inline SeifertData random_seifert(int genus, std::mt19937_64& rng) {
    SeifertData s;
    s.genus = genus;
    const int n = 2 * genus;
    s.linking.assign(n, std::vector<Integer>(n, 0));
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            s.linking[i - 1][j - 1] = entry(rng);
            if (i != j)
                s.linking[j - 1][i - 1] = s.linking[i - 1][j - 1] - symplectic_pairing(i, j);
        }
    return s;
}

}  // namespace hdg
