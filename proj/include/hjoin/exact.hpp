#pragma once

// Exact integer/rational linear algebra and dense polynomial arithmetic.
// Everything here is exact: ranks and solves are over the rationals,
// characteristic polynomials over the integers. Floating point never enters.

#include <hjoin/error.hpp>

#include <gmpxx.h>

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hjoin {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Exact rational vector; mpq_class keeps entries in canonical reduced form.
using RationalVector = std::vector<BigRat>;

inline BigInt exact_div(const BigInt& num, const BigInt& den) {
    if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw error("exact_div: " + num.get_str() + " is not divisible by " + den.get_str());
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<BigInt>& entries() const { return entries_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    BigInt trace() const {
        if (rows_ != cols_) throw error("trace: matrix must be square");
        BigInt t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw error("matrix product: inner dimensions differ");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigInt& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> entries_;
};

inline std::vector<BigInt> mat_vec(const IntMatrix& a, const std::vector<BigInt>& x) {
    if (a.cols() != x.size()) throw error("mat_vec: dimension mismatch");
    std::vector<BigInt> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) y[i] += a(i, j) * x[j];
    return y;
}

// Dense integer polynomial, coefficients lowest degree first, canonical form
// (no trailing zero coefficients; the zero polynomial has no coefficients).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
    static IntPoly one() { return constant(1); }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    const BigInt& coeff(std::size_t k) const {
        static const BigInt zero = 0;
        return k < coeffs_.size() ? coeffs_[k] : zero;
    }

    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    IntPoly negated() const {
        std::vector<BigInt> c(coeffs_);
        for (auto& x : c) x = -x;
        return IntPoly(std::move(c));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<BigInt> coeffs_;
};

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    std::vector<BigInt> c(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeff(i) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeff(i) * b.coeff(j);
    }
    return IntPoly(std::move(c));
}

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(c));
}

inline IntPoly poly_pow(const IntPoly& a, std::size_t e) {
    IntPoly r = IntPoly::one();
    for (std::size_t i = 0; i < e; ++i) r = poly_mul(r, a);
    return r;
}

inline BigInt poly_eval_at_int(const IntPoly& p, const BigInt& v) {
    BigInt acc = 0;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * v + p.coeff(k);
    return acc;
}

inline double poly_eval_at_double(const IntPoly& p, double v) {
    double acc = 0.0;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * v + p.coeff(k).get_d();
    return acc;
}

// Exact quotient num/den for monic den; a nonzero remainder is an error
// (callers rely on divisibility as a correctness signal, not a soft failure).
inline IntPoly poly_divide_exact(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero() || !den.is_monic())
        throw error("poly_divide_exact: divisor must be monic and nonzero");
    if (num.is_zero()) return IntPoly{};
    if (num.degree() < den.degree())
        throw error("poly_divide_exact: nonzero remainder (degree of numerator too small)");
    const std::size_t dd = static_cast<std::size_t>(den.degree());
    const std::size_t qd = static_cast<std::size_t>(num.degree()) - dd;
    std::vector<BigInt> rem(num.coeffs());
    std::vector<BigInt> q(qd + 1);
    for (std::size_t k = qd + 1; k-- > 0;) {
        BigInt f = rem[k + dd];
        if (f != 0)
            for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= f * den.coeff(j);
        q[k] = std::move(f);
    }
    for (std::size_t j = 0; j < dd; ++j)
        if (rem[j] != 0) throw error("poly_divide_exact: nonzero remainder");
    return IntPoly(std::move(q));
}

// Human-readable form, highest degree first: "x^5 - x^4 - 19x^3 + ...".
inline std::string poly_to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        const BigInt& c = p.coeff(k);
        if (c == 0) continue;
        BigInt a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || k == 0) os << a.get_str();
        if (k >= 1) os << "x";
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

// Exact rank over the rationals via Bareiss fraction-free elimination.
// Row swaps and column skips are fine; every interior division is exact.
inline std::size_t rank_exact(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        a.swap_rows(pivot, rank);
        const BigInt piv = a(rank, col);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a(i, j) = exact_div(a(i, j) * piv - a(i, col) * a(rank, j), prev);
            a(i, col) = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

// Unique exact solution of a·x = b for a with full column rank and b in the
// column space of a. Rank deficiency or inconsistency throws: for walk
// matrices both are impossible, so hitting either means a bug upstream.
inline RationalVector solve_exact(const IntMatrix& a, const RationalVector& b) {
    const std::size_t n = a.rows(), s = a.cols();
    if (b.size() != n) throw error("solve_exact: right-hand side has wrong length");
    std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(s + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < s; ++j) m[i][j] = BigRat(a(i, j));
        m[i][s] = b[i];
    }
    std::vector<std::size_t> pivot_row(s);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t pr = rank;
        while (pr < n && m[pr][col] == 0) ++pr;
        if (pr == n) throw error("solve_exact: matrix is rank-deficient");
        std::swap(m[pr], m[rank]);
        const BigRat piv = m[rank][col];
        for (std::size_t j = col; j <= s; ++j) m[rank][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const BigRat f = m[i][col];
            for (std::size_t j = col; j <= s; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_row[col] = rank;
        ++rank;
    }
    for (std::size_t i = rank; i < n; ++i)
        if (m[i][s] != 0) throw error("solve_exact: inconsistent system");
    RationalVector x(s);
    for (std::size_t col = 0; col < s; ++col) x[col] = m[pivot_row[col]][s];
    return x;
}

// Monic characteristic polynomial det(xI - m) by Faddeev-LeVerrier.
// The trace divisions are exact over the integers.
inline IntPoly charpoly_exact(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw error("charpoly_exact: matrix must be square");
    const std::size_t n = m.rows();
    std::vector<BigInt> c(n + 1);
    c[n] = 1;
    IntMatrix acc = IntMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        acc = m * acc;
        c[n - k] = -exact_div(acc.trace(), BigInt(k));
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k];
    }
    return IntPoly(std::move(c));
}

} // namespace hjoin
