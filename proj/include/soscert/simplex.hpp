#pragma once

/*
 * Small exact-rational LP feasibility: find x >= 0 with Ax = b, by
 * phase-one simplex with Bland's rule (anti-cycling, so termination is
 * guaranteed).  Sized for the handful of rows the minor game needs.
 */

#include "soscert/matrix.hpp"
#include "soscert/rational.hpp"

#include <optional>
#include <vector>

namespace soscert {

inline std::optional<std::vector<Rat>> lp_feasible_point(Matrix<Rat> a, std::vector<Rat> b,
                                                         long max_pivots = 200000) {
    size_t m = a.rows(), n = a.cols();
    for (size_t i = 0; i < m; ++i)
        if (b[i].sign() < 0) {
            for (size_t j = 0; j < n; ++j) a(i, j) = -a(i, j);
            b[i] = -b[i];
        }
    // tableau over columns [x (n) | artificial (m) | rhs]
    size_t cols = n + m + 1;
    Matrix<Rat> t(m + 1, cols);
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
        t(i, n + i) = Rat(1);
        t(i, cols - 1) = b[i];
        basis[i] = n + i;
    }
    // objective: minimize sum of artificials; reduced costs z_j - c_j
    for (size_t j = 0; j < cols; ++j) {
        Rat s(0);
        for (size_t i = 0; i < m; ++i) s += t(i, j);
        bool artificial = (j >= n && j + 1 < cols);
        t(m, j) = s - (artificial ? Rat(1) : Rat(0));
    }

    for (long pivots = 0; pivots < max_pivots; ++pivots) {
        // Bland: smallest column with positive reduced cost (minimization)
        size_t enter = cols - 1;
        for (size_t j = 0; j + 1 < cols; ++j)
            if (t(m, j).sign() > 0) { enter = j; break; }
        if (enter == cols - 1) break; // optimal
        // smallest-index leaving row among minimal ratios
        bool found = false;
        size_t leave = 0;
        Rat best(0);
        for (size_t i = 0; i < m; ++i) {
            if (t(i, enter).sign() <= 0) continue;
            Rat ratio = t(i, cols - 1) / t(i, enter);
            if (!found || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
                found = true;
            }
        }
        if (!found) return std::nullopt; // unbounded phase-one cannot happen, bail out
        // pivot
        Rat p = t(leave, enter);
        for (size_t j = 0; j < cols; ++j) t(leave, j) = t(leave, j) / p;
        for (size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            Rat f = t(i, enter);
            if (f.is_zero()) continue;
            for (size_t j = 0; j < cols; ++j) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    // feasible iff all artificials are zero-valued
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n && !t(i, cols - 1).is_zero()) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t(i, cols - 1);
    return x;
}

} // namespace soscert
