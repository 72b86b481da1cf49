#pragma once

/*
 * For A psd and B symmetric psd on Null(A): A + eps B is psd for all
 * small eps > 0 iff every z in Null(A) with z.Bz = 0 has Bz = 0.  The
 * kernel condition is checked exactly on a null-space basis; a concrete
 * eps is then certified by descending powers of two, each step an exact
 * psd check.  Once some eps accepts, every smaller eps is psd too,
 * since A + eps'B is a convex combination of A and A + eps B.
 */

#include "soscert/ldl.hpp"
#include "soscert/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

struct PerturbationReport {
    enum class Verdict { PSD_FOR_SMALL_EPS, NEVER_PSD } verdict;
    Rat epsilon;                          // certified when accepting
    bool sum_positive_definite = false;   // A + eps B is pd (B pd on Null(A))
    std::vector<Rat> kernel_violation;    // z1 with z1.Bz1 = 0, Bz1 != 0
    std::vector<Rat> b_z1;                // the nonzero image B z1
    size_t halvings = 0;
};

inline PerturbationReport perturb_check(const Matrix<Rat>& a, const Matrix<Rat>& b,
                                        int max_halvings = 256) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("perturbation shapes differ");
    auto cert_a = psd_check_exact(a);
    if (!cert_a.accepted)
        throw std::invalid_argument("perturbation base matrix is not psd");

    auto null_a = kernel_basis(a);
    PerturbationReport rep;

    if (!null_a.empty()) {
        size_t m = null_a.size(), n = a.rows();
        // restriction of B to Null(A)
        Matrix<Rat> r(m, m);
        std::vector<std::vector<Rat>> bz(m);
        for (size_t k = 0; k < m; ++k) bz[k] = b.apply(null_a[k]);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                Rat s(0);
                for (size_t t = 0; t < n; ++t) s += null_a[i][t] * bz[j][t];
                r(i, j) = s;
            }
        auto cert_r = psd_check_exact(r);
        if (!cert_r.accepted) {
            std::string msg = "B is not psd on Null(A); witness z with z.Bz = " +
                              cert_r.refutation_value.str();
            throw std::domain_error(msg);
        }
        rep.sum_positive_definite = cert_r.positive_definite;

        // kernel condition: zeros of the restricted form must be zeros of B
        for (auto& u : kernel_basis(r)) {
            std::vector<Rat> z1(n, Rat(0));
            for (size_t k = 0; k < m; ++k)
                for (size_t t = 0; t < n; ++t) z1[t] += u[k] * null_a[k][t];
            std::vector<Rat> img = b.apply(z1);
            bool nonzero = false;
            for (const auto& v : img) nonzero = nonzero || !v.is_zero();
            if (nonzero) {
                rep.verdict = PerturbationReport::Verdict::NEVER_PSD;
                rep.kernel_violation = std::move(z1);
                rep.b_z1 = std::move(img);
                return rep;
            }
        }
    } else {
        rep.sum_positive_definite = true; // A pd already
    }

    Rat eps(1);
    for (int k = 0; k < max_halvings; ++k) {
        auto cert = psd_check_exact(a + b * eps);
        if (cert.accepted && (!rep.sum_positive_definite || cert.positive_definite)) {
            rep.verdict = PerturbationReport::Verdict::PSD_FOR_SMALL_EPS;
            rep.epsilon = eps;
            rep.halvings = static_cast<size_t>(k);
            return rep;
        }
        eps = eps / Rat(2);
    }
    throw std::runtime_error("epsilon descent did not certify within the halving budget");
}

// Null(A + eps B) as exact kernel, for containment checks.
inline std::vector<std::vector<Rat>> null_of_sum(const Matrix<Rat>& a, const Matrix<Rat>& b,
                                                 const Rat& eps) {
    return kernel_basis(a + b * eps);
}

} // namespace soscert
