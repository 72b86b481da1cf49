#pragma once

/*
 * Exact psd certification of symmetric matrices by pivoted LDL^T.
 * Accepting: P A P^T = L D L^T with D >= 0 entrywise, all exact.
 * Refuting: a vector v with v . A v < 0, produced from the congruence
 * transform accumulated during elimination.
 *
 * Eigendecompositions leave the rational field; LDL does not, and an
 * accepted factorization doubles as a weighted-square extraction.
 */

#include "soscert/matrix.hpp"
#include "soscert/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace soscert {

template <class K>
struct LdlCertificate {
    bool accepted = false;
    bool positive_definite = false;
    std::vector<int> perm;      // row i of the permuted matrix is row perm[i] of A
    Matrix<K> L;                // unit lower triangular
    std::vector<K> D;           // diagonal, >= 0 when accepted
    std::vector<K> refutation;  // v with v.Av < 0 when rejected
    K refutation_value{};
    size_t rank = 0;

    // Exact re-verification of whichever claim the certificate makes.
    bool verify(const Matrix<K>& a) const {
        size_t n = a.rows();
        if (!accepted) {
            K q{};
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    q = q + refutation[i] * a(i, j) * refutation[j];
            return exact_sign(q) < 0;
        }
        for (const auto& d : D)
            if (exact_sign(d) < 0) return false;
        Matrix<K> pap(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) pap(i, j) = a(perm[i], perm[j]);
        Matrix<K> ldl(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                K s{};
                for (size_t k = 0; k < n; ++k) s = s + L(i, k) * D[k] * L(j, k);
                ldl(i, j) = s;
            }
        return pap == ldl;
    }
};

/*
 * Decide psd-ness of a symmetric matrix.  Pivots only on positive
 * diagonal entries; a negative diagonal or a nonzero off-diagonal entry
 * in a zero-diagonal Schur complement refutes immediately.
 */
template <class K = Rat>
LdlCertificate<K> psd_check_exact(const Matrix<K>& a0) {
    if (a0.rows() != a0.cols()) throw std::invalid_argument("psd check needs a square matrix");
    size_t n = a0.rows();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!(a0(i, j) == a0(j, i)))
                throw std::invalid_argument("psd check needs a symmetric matrix");

    LdlCertificate<K> cert;
    cert.perm.resize(n);
    for (size_t i = 0; i < n; ++i) cert.perm[i] = static_cast<int>(i);
    Matrix<K> s = a0;                     // working matrix, congruent image of A
    Matrix<K> c = Matrix<K>::identity(n); // C A C^T = current s (up to permutation)
    Matrix<K> l(n, n);                    // multipliers: l(orig_row, step)
    std::vector<K> d(n, K{});
    std::vector<bool> done(n, false);

    auto refute = [&](const std::vector<K>& w) {
        // v = C^T w satisfies v.Av = w.(CAC^T)w < 0
        std::vector<K> v(n, K{});
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!c(j, i).is_zero() && !w[j].is_zero()) v[i] = v[i] + c(j, i) * w[j];
        cert.accepted = false;
        cert.refutation = v;
        K q{};
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) q = q + v[i] * a0(i, j) * v[j];
        cert.refutation_value = q;
        return cert;
    };

    size_t step = 0;
    for (size_t col = 0; col < n; ++col) {
        // find a positive diagonal pivot; negatives refute outright
        std::optional<size_t> pivot;
        for (size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            int sg = exact_sign(s(i, i));
            if (sg < 0) {
                std::vector<K> w(n, K{});
                w[i] = k_one<K>();
                return refute(w);
            }
            if (sg > 0 && !pivot) pivot = i;
        }
        if (!pivot) break;
        size_t p = *pivot;
        done[p] = true;
        cert.perm[step] = static_cast<int>(p);
        d[step] = s(p, p);
        // Row operations only: the not-yet-pivoted block then holds the
        // Schur complement, which is symmetric without explicit copying.
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || s(i, p).is_zero()) continue;
            K f = s(i, p) / s(p, p);
            for (size_t j = 0; j < n; ++j) {
                s(i, j) = s(i, j) - f * s(p, j);
                c(i, j) = c(i, j) - f * c(p, j);
            }
            l(i, step) = f;
        }
        ++step;
    }

    // remaining Schur complement has an all-zero diagonal
    for (size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (size_t j = 0; j < n; ++j) {
            if (done[j] || j == i || s(i, j).is_zero()) continue;
            // 2x2 block [[0, m],[m, 0]]: (e_i - sgn(m) e_j) refutes
            std::vector<K> w(n, K{});
            w[i] = k_one<K>();
            w[j] = exact_sign(s(i, j)) > 0 ? -k_one<K>() : k_one<K>();
            return refute(w);
        }
    }

    // accepted: fill identity tail of the permutation and re-index L
    size_t tail = step;
    for (size_t i = 0; i < n; ++i)
        if (!done[i]) cert.perm[tail++] = static_cast<int>(i);
    Matrix<K> lp(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) lp(i, k) = l(cert.perm[i], k);
    for (size_t i = 0; i < n; ++i) lp(i, i) = k_one<K>();
    cert.accepted = true;
    cert.L = lp;
    cert.D = d;
    cert.rank = step;
    cert.positive_definite = (step == n);
    return cert;
}

} // namespace soscert
