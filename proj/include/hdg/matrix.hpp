#pragma once

#include "hdg/errors.hpp"
#include "hdg/rational.hpp"

#include <cstddef>
#include <vector>

namespace hdg {

// Dense square matrix of exact rationals. Sized for Heegaard genus (tiny),
// so plain Gauss-Jordan with exact pivots is all we need.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t size() const { return n_; }
    Rational& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    bool operator==(const RationalMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    RationalMatrix operator*(const RationalMatrix& o) const {
        RationalMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const Rational& aik = at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < n_; ++j) out.at(i, j) += aik * o.at(k, j);
            }
        return out;
    }

    Rational determinant() const {
        RationalMatrix m(*this);
        Rational det = 1;
        for (std::size_t col = 0; col < n_; ++col) {
            std::size_t pivot = col;
            while (pivot < n_ && m.at(pivot, col) == 0) ++pivot;
            if (pivot == n_) return 0;
            if (pivot != col) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
                det = -det;
            }
            det *= m.at(col, col);
            for (std::size_t r = col + 1; r < n_; ++r) {
                if (m.at(r, col) == 0) continue;
                const Rational f = m.at(r, col) / m.at(col, col);
                for (std::size_t j = col; j < n_; ++j) m.at(r, j) -= f * m.at(col, j);
            }
        }
        return det;
    }

    // Exact inverse; throws SingularIntersection when the matrix is singular.
    RationalMatrix inverse() const {
        RationalMatrix m(*this);
        RationalMatrix inv = identity(n_);
        for (std::size_t col = 0; col < n_; ++col) {
            std::size_t pivot = col;
            while (pivot < n_ && m.at(pivot, col) == 0) ++pivot;
            if (pivot == n_) throw SingularIntersection("intersection matrix is singular");
            if (pivot != col)
                for (std::size_t j = 0; j < n_; ++j) {
                    std::swap(m.at(pivot, j), m.at(col, j));
                    std::swap(inv.at(pivot, j), inv.at(col, j));
                }
            const Rational p = m.at(col, col);
            for (std::size_t j = 0; j < n_; ++j) {
                m.at(col, j) /= p;
                inv.at(col, j) /= p;
            }
            for (std::size_t r = 0; r < n_; ++r) {
                if (r == col || m.at(r, col) == 0) continue;
                const Rational f = m.at(r, col);
                for (std::size_t j = 0; j < n_; ++j) {
                    m.at(r, j) -= f * m.at(col, j);
                    inv.at(r, j) -= f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    RationalMatrix transposed() const {
        RationalMatrix out(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

  private:
    std::size_t n_ = 0;
    std::vector<Rational> a_;
};

}  // namespace hdg
