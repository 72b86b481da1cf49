#pragma once

/*
 * Common-root witnesses, the change elements a complex root forces, and
 * coercivity certificates from full-rank Gram matrices.
 */

#include "soscert/form.hpp"
#include "soscert/ldl.hpp"
#include "soscert/repmatrix.hpp"
#include "soscert/symtensor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

struct WitnessResult {
    bool all_vanish = false;
    int failing_index = -1;           // first square not vanishing at z
    std::vector<GaussRat> values;     // exact values of every square at z
};

// Evaluate every square at a nonzero complex point.
inline WitnessResult witness_verify(const SosExpression<Rat>& e, const std::vector<GaussRat>& z) {
    bool ztrivial = true;
    for (const auto& c : z) ztrivial = ztrivial && c.is_zero();
    if (ztrivial) throw std::invalid_argument("trivial witness");
    WitnessResult r;
    r.all_vanish = true;
    for (size_t j = 0; j < e.squares.size(); ++j) {
        GaussRat v = e.squares[j].template eval_at<GaussRat>(z);
        r.values.push_back(v);
        if (!v.is_zero() && r.failing_index < 0) {
            r.all_vanish = false;
            r.failing_index = static_cast<int>(j);
        }
    }
    return r;
}

struct ForcedDelta {
    size_t basis_index;     // position in the canonical change basis
    RepMatrix<Rat> element;
    Rat rr, qq, rq;         // the three pairings against (Re, Im) of z^p
};

/*
 * Change-basis elements not annihilating the real/imaginary parts of
 * z^{otimes p}: the elements any psd-restoring change must draw on to
 * move z^{otimes p} out of a null space.
 */
inline std::vector<ForcedDelta> forced_delta_analysis(const ChangeBasis& cb,
                                                      const std::vector<GaussRat>& z) {
    bool ztrivial = true;
    for (const auto& c : z) ztrivial = ztrivial && c.is_zero();
    if (ztrivial) throw std::invalid_argument("trivial witness");
    auto [r, q] = complex_rankone_parts(z, cb.order);
    std::vector<ForcedDelta> out;
    for (size_t i = 0; i < cb.elements.size(); ++i) {
        RepMatrix<Rat> d = cb.elements[i].materialize<Rat>(cb.order);
        Rat rr = d.quad(r, r), qq = d.quad(q, q), rq = d.quad(r, q);
        if (!rr.is_zero() || !qq.is_zero() || !rq.is_zero())
            out.push_back({i, std::move(d), rr, qq, rq});
    }
    return out;
}

struct CoercivityCertificate {
    bool ok = false;
    SosExpression<Rat> squares;   // representation with no common complex root
    std::string reason;           // failure note otherwise
};

/*
 * A pd Gram matrix certifies coercivity: G = sum d_k w_k (x) w_k with
 * d_k > 0 and the w_k spanning, so G z^p = 0 forces z^p = 0, which for
 * rank-one tensors forces z = 0.  Emits the extracted squares.
 */
inline CoercivityCertificate coercive_from_pd_gram(const RepMatrix<Rat>& g) {
    CoercivityCertificate cert;
    auto ldl = psd_check_exact(g.entries);
    if (!ldl.accepted) {
        cert.reason = "matrix is not psd";
        return cert;
    }
    if (!ldl.positive_definite) {
        cert.reason = "matrix is psd but rank-deficient; no conclusion";
        return cert;
    }
    cert.ok = true;
    cert.squares = sos_from_gram(g);
    return cert;
}

} // namespace soscert
