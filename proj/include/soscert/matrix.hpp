#pragma once

/*
 * Dense exact matrices over a scalar field.  Row reduction is
 * fraction-free Gauss-Jordan (Bareiss one-step updates, dividing by the
 * previous pivot) on rows first cleared of denominators, with pivot
 * normalization at the end.  All divisions are exact, which keeps the
 * gcd work bounded on rational and rational-function entries.
 */

#include "soscert/ratfunc.hpp"
#include "soscert/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace soscert {

template <class K>
class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(size_t r, size_t c) : r_(r), c_(c), a_(r, std::vector<K>(c, K{})) {}
    Matrix(std::vector<std::vector<K>> rows) : a_(std::move(rows)) {
        r_ = a_.size();
        c_ = r_ ? a_[0].size() : 0;
        for (const auto& row : a_)
            if (row.size() != c_) throw std::invalid_argument("ragged matrix");
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.a_[i][i] = k_one<K>();
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    K& operator()(size_t i, size_t j) { return a_[i][j]; }
    const K& operator()(size_t i, size_t j) const { return a_[i][j]; }
    const std::vector<K>& row(size_t i) const { return a_[i]; }

    bool operator==(const Matrix& o) const { return a_ == o.a_; }

    Matrix operator+(const Matrix& o) const {
        shape_check(o);
        Matrix m(r_, c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m.a_[i][j] = a_[i][j] + o.a_[i][j];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        shape_check(o);
        Matrix m(r_, c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m.a_[i][j] = a_[i][j] - o.a_[i][j];
        return m;
    }
    Matrix operator*(const K& s) const {
        Matrix m(r_, c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m.a_[i][j] = a_[i][j] * s;
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix m(r_, o.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                if (a_[i][k].is_zero()) continue;
                for (size_t j = 0; j < o.c_; ++j)
                    m.a_[i][j] = m.a_[i][j] + a_[i][k] * o.a_[k][j];
            }
        return m;
    }
    std::vector<K> apply(const std::vector<K>& x) const {
        if (x.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<K> y(r_, K{});
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j)
                if (!a_[i][j].is_zero() && !x[j].is_zero()) y[i] = y[i] + a_[i][j] * x[j];
        return y;
    }
    Matrix transpose() const {
        Matrix m(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m.a_[j][i] = a_[i][j];
        return m;
    }
    bool is_zero() const {
        for (const auto& row : a_)
            for (const auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    }

private:
    void shape_check(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    }
    size_t r_, c_;
    std::vector<std::vector<K>> a_;
};

namespace detail {

template <class K> inline void clear_denominators(std::vector<K>&) {}

inline void clear_denominators(std::vector<Rat>& row) {
    mpz_class l = 1;
    for (const auto& v : row)
        if (!v.is_zero()) l = l / gcd(l, v.den()) * v.den();
    if (l == 1) return;
    Rat s{l};
    for (auto& v : row) v = v * s;
}

inline void clear_denominators(std::vector<RatFunc>& row) {
    UniPoly l = UniPoly::one();
    for (const auto& v : row)
        if (!v.is_zero()) l = (l * v.den()).exact_div(gcd(l, v.den()));
    if (l == UniPoly::one()) return;
    RatFunc s(l);
    for (auto& v : row) v = v * s;
}

} // namespace detail

struct RrefResult {
    std::vector<int> pivot_cols;
    size_t rank = 0;
};

/*
 * In-place reduced row echelon form.  The transform callback, when
 * given, receives every elementary operation so callers can mirror the
 * reduction on a parallel tag matrix.
 */
template <Field K>
RrefResult rref_inplace(Matrix<K>& m) {
    // denominator-free rows
    for (size_t i = 0; i < m.rows(); ++i) {
        std::vector<K> row(m.cols());
        for (size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
        detail::clear_denominators(row);
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = row[j];
    }

    RrefResult res;
    K prev = k_one<K>();
    size_t r = 0;
    for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        size_t piv = r;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        K p = m(r, col);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            K f = m(i, col);
            for (size_t j = 0; j < m.cols(); ++j)
                m(i, j) = (m(i, j) * p - f * m(r, j)) / prev;
        }
        prev = p;
        res.pivot_cols.push_back(static_cast<int>(col));
        ++r;
    }
    res.rank = r;
    // normalize pivot rows
    for (size_t i = 0; i < res.rank; ++i) {
        K p = m(i, res.pivot_cols[i]);
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) / p;
    }
    return res;
}

template <Field K>
std::pair<Matrix<K>, RrefResult> rref(Matrix<K> m) {
    RrefResult r = rref_inplace(m);
    return {std::move(m), r};
}

// Basis of the right kernel {x : Mx = 0}.
template <Field K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& m0) {
    Matrix<K> m = m0;
    RrefResult r = rref_inplace(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(m.cols(), K{});
        v[free] = k_one<K>();
        for (size_t i = 0; i < r.rank; ++i)
            v[r.pivot_cols[i]] = -m(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Determinant by fraction-free forward elimination.
template <Field K>
K det(Matrix<K> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return k_one<K>();
    K prev = k_one<K>();
    K sign = k_one<K>();
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m(piv, k).is_zero()) ++piv;
        if (piv == n) return K{};
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        K p = m(k, k);
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * p - m(i, k) * m(k, j)) / prev;
        prev = p;
    }
    return sign * m(n - 1, n - 1);
}

// Any solution of Mx = b, or empty if inconsistent.
template <Field K>
std::vector<K> solve_any(const Matrix<K>& m0, const std::vector<K>& b) {
    Matrix<K> m(m0.rows(), m0.cols() + 1);
    for (size_t i = 0; i < m0.rows(); ++i) {
        for (size_t j = 0; j < m0.cols(); ++j) m(i, j) = m0(i, j);
        m(i, m0.cols()) = b[i];
    }
    RrefResult r = rref_inplace(m);
    std::vector<K> x(m0.cols(), K{});
    for (size_t i = 0; i < r.rank; ++i) {
        if (r.pivot_cols[i] == static_cast<int>(m0.cols())) return {}; // inconsistent
        x[r.pivot_cols[i]] = m(i, m0.cols());
    }
    return x;
}

} // namespace soscert
