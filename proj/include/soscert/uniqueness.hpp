#pragma once

/*
 * Gram-matrix uniqueness, in five steps.  Given a psd representation
 * matrix G for a form:
 *   1. parametrize Null(G) by fresh variables v_1..v_m,
 *   2. apply every change-basis element D as D.tt, giving quadratics in v,
 *   3. lay the quadratics out over the monomial columns
 *      v1^2,..,vm^2, v1v2, v1v3, ..  (squares first, then pairs),
 *   4. reduce to row echelon form,
 *   5. decide whether the span contains a nonzero psd quadratic.
 * No nonzero psd combination means no change preserves psd-ness, so G
 * is the unique Gram matrix.  A psd combination that also satisfies the
 * perturbation kernel condition certifies non-uniqueness with an exact
 * eps.  Cases outside the recognized structure are reported as
 * inconclusive rather than guessed.
 */

#include "soscert/form.hpp"
#include "soscert/matrix.hpp"
#include "soscert/perturb.hpp"
#include "soscert/repmatrix.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

// Columns: squares v_i^2 (i ascending), then cross pairs (i<j) lexicographic.
inline int quad_monomial_count(int m) { return m * (m + 1) / 2; }
inline int quad_col_square(int m, int i) { (void)m; return i; }
inline int quad_col_cross(int m, int i, int j) {
    // pairs (0,1),(0,2),..,(0,m-1),(1,2),..
    int base = m;
    for (int r = 0; r < i; ++r) base += m - 1 - r;
    return base + (j - i - 1);
}
inline std::pair<int, int> quad_col_decode(int m, int col) {
    if (col < m) return {col, col};
    int c = col - m;
    for (int i = 0; i < m; ++i) {
        int row = m - 1 - i;
        if (c < row) return {i, i + 1 + c};
        c -= row;
    }
    throw std::invalid_argument("bad quadratic monomial column");
}

enum class SpanVerdict { TRIVIAL, NONTRIVIAL, INCONCLUSIVE };

template <class K>
struct SpanResult {
    SpanVerdict verdict = SpanVerdict::INCONCLUSIVE;
    std::vector<K> witness;  // over the input quadratics, when NONTRIVIAL
    Matrix<K> witness_matrix; // the psd combination as an m x m matrix
    bool witness_pd = false;
    std::string detail;
};

namespace detail {

// Quadratic form as coefficient row over the monomial columns.
template <class K>
std::vector<K> quad_to_row(const Form<K>& q, int m) {
    std::vector<K> row(quad_monomial_count(m), K{});
    for (const auto& [e, c] : q.poly().terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < m; ++v) {
            if (e[v] == 2 && i < 0) { i = j = v; break; }
            if (e[v] == 1) { (i < 0 ? i : j) = v; }
        }
        if (i == j) row[quad_col_square(m, i)] = c;
        else row[quad_col_cross(m, i, j)] = c;
    }
    return row;
}

template <class K>
Matrix<K> assemble_combination(int m, const std::vector<std::vector<K>>& rows,
                               const std::vector<K>& lambda) {
    Matrix<K> q(m, m);
    K half = from_rat<K>(Rat(1, 2));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (lambda[r].is_zero()) continue;
        for (size_t col = 0; col < rows[r].size(); ++col) {
            if (rows[r][col].is_zero()) continue;
            auto [i, j] = quad_col_decode(m, static_cast<int>(col));
            K v = lambda[r] * rows[r][col];
            if (i == j) q(i, i) = q(i, i) + v;
            else {
                q(i, j) = q(i, j) + v * half;
                q(j, i) = q(j, i) + v * half;
            }
        }
    }
    return q;
}

} // namespace detail

/*
 * Decide whether the span of the given quadratics meets the psd cone
 * only at zero.  The structure recognized for TRIVIAL: echelon rows are
 * square monomials and cross monomials, each coupled only to a single
 * shared excluded cross monomial (e,f); coupled crosses form a matching
 * disjoint from (e,f); all couplings share one strict sign; and every
 * coupled block satisfies the 2x2 minor bound (product of square
 * couplings exceeding the squared cross coupling, and s_e s_f > 1).
 */
template <class K>
SpanResult<K> psd_span_trivial(const std::vector<Form<K>>& quadratics, int m) {
    SpanResult<K> res;
    if (quadratics.empty()) {
        res.verdict = SpanVerdict::TRIVIAL;
        res.detail = "empty span";
        return res;
    }
    int cols = quad_monomial_count(m);
    size_t nrows = quadratics.size();
    // augmented with an identity block to track row provenance
    Matrix<K> work(nrows, cols + nrows);
    for (size_t r = 0; r < nrows; ++r) {
        auto row = detail::quad_to_row(quadratics[r], m);
        for (int c = 0; c < cols; ++c) work(r, c) = row[c];
        work(r, cols + r) = k_one<K>();
    }
    // reduce by the quadratic columns only (tag block tags along)
    Matrix<K> reduced = work;
    RrefResult rr;
    {
        // run rref on the full matrix; pivots inside the tag block would
        // correspond to zero quadratics, which we drop afterwards
        auto pr = rref(std::move(reduced));
        reduced = std::move(pr.first);
        rr = pr.second;
    }
    std::vector<int> pivots;
    std::vector<size_t> live_rows;
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        if (rr.pivot_cols[i] < cols) {
            pivots.push_back(rr.pivot_cols[i]);
            live_rows.push_back(i);
        }
    }

    auto lambda_from_reduced = [&](const std::vector<K>& lam_reduced) {
        std::vector<K> lam(nrows, K{});
        for (size_t t = 0; t < live_rows.size(); ++t) {
            if (lam_reduced[t].is_zero()) continue;
            for (size_t r = 0; r < nrows; ++r)
                lam[r] = lam[r] + lam_reduced[t] * reduced(live_rows[t], cols + r);
        }
        return lam;
    };
    auto finish_nontrivial = [&](std::vector<K> lam_reduced, const std::string& why) {
        std::vector<std::vector<K>> rows(live_rows.size());
        for (size_t t = 0; t < live_rows.size(); ++t) {
            rows[t].resize(cols);
            for (int c = 0; c < cols; ++c) rows[t][c] = reduced(live_rows[t], c);
        }
        Matrix<K> q = detail::assemble_combination(m, rows, lam_reduced);
        auto cert = psd_check_exact(q);
        if (!cert.accepted || q.is_zero())
            throw std::logic_error("candidate psd witness failed exact verification");
        res.verdict = SpanVerdict::NONTRIVIAL;
        res.witness = lambda_from_reduced(lam_reduced);
        res.witness_matrix = q;
        res.witness_pd = cert.positive_definite;
        res.detail = why;
        return res;
    };

    try {
        // classify echelon rows
        std::vector<bool> is_pivot(cols, false);
        for (int pc : pivots) is_pivot[pc] = true;
        std::vector<int> nonpivot;
        for (int c = 0; c < cols; ++c)
            if (!is_pivot[c]) nonpivot.push_back(c);

        std::vector<int> square_row(m, -1);     // var -> reduced row index (in live_rows)
        std::vector<std::vector<int>> cross_row(m, std::vector<int>(m, -1));
        for (size_t t = 0; t < live_rows.size(); ++t) {
            auto [i, j] = quad_col_decode(m, pivots[t]);
            if (i == j) square_row[i] = static_cast<int>(t);
            else cross_row[i][j] = static_cast<int>(t);
        }
        // a pure square row is itself psd and nonzero
        for (int v = 0; v < m; ++v) {
            if (square_row[v] < 0) continue;
            bool pure = true;
            for (int c = 0; c < cols && pure; ++c)
                if (c != pivots[square_row[v]] &&
                    !reduced(live_rows[square_row[v]], c).is_zero())
                    pure = false;
            if (pure) {
                std::vector<K> lam(live_rows.size(), K{});
                lam[square_row[v]] = k_one<K>();
                return finish_nontrivial(std::move(lam),
                                         "span contains the pure square of variable " +
                                             std::to_string(v));
            }
        }

        if (nonpivot.size() != 1) {
            res.detail = "structure not recognized: " + std::to_string(nonpivot.size()) +
                         " non-pivot columns";
            return res;
        }
        auto [ve, vf] = quad_col_decode(m, nonpivot[0]);
        if (ve == vf) {
            res.detail = "structure not recognized: excluded column is a square";
            return res;
        }

        // couplings to the excluded column
        std::vector<K> s(m, K{});           // square-row couplings
        std::vector<bool> in_s(m, false);
        struct Pair { int x, y, row; K c; };
        std::vector<Pair> pairs;
        for (size_t t = 0; t < live_rows.size(); ++t) {
            K coupling = reduced(live_rows[t], nonpivot[0]);
            // rows must touch only their pivot and the excluded column
            for (int c = 0; c < cols; ++c)
                if (c != pivots[t] && c != nonpivot[0] &&
                    !reduced(live_rows[t], c).is_zero()) {
                    res.detail = "structure not recognized: row with extra support";
                    return res;
                }
            auto [i, j] = quad_col_decode(m, pivots[t]);
            if (i == j) {
                s[i] = coupling;
                in_s[i] = true;
            } else if (!coupling.is_zero()) {
                pairs.push_back({i, j, static_cast<int>(t), coupling});
            }
        }

        // any zero coupling on a square row gives a psd witness at once
        for (int v = 0; v < m; ++v)
            if (in_s[v] && s[v].is_zero()) {
                std::vector<K> lam(live_rows.size(), K{});
                lam[square_row[v]] = k_one<K>();
                return finish_nontrivial(std::move(lam),
                                         "square row of variable " + std::to_string(v) +
                                             " has zero coupling");
            }

        // signs of the couplings
        int common_sign = 0;
        bool mixed = false;
        for (int v = 0; v < m; ++v) {
            if (!in_s[v]) continue;
            int sg = exact_sign(s[v]);
            if (common_sign == 0) common_sign = sg;
            else if (sg != common_sign) mixed = true;
        }

        if (mixed) {
            // balance two opposite groups; every other diagonal stays positive
            K pos{}, neg{};
            for (int v = 0; v < m; ++v) {
                if (!in_s[v]) continue;
                if (exact_sign(s[v]) > 0) pos = pos + s[v];
                else neg = neg - s[v];
            }
            K x = neg / pos;
            std::vector<K> lam(live_rows.size(), K{});
            for (int v = 0; v < m; ++v) {
                if (!in_s[v]) continue;
                lam[square_row[v]] = exact_sign(s[v]) > 0 ? x : k_one<K>();
            }
            return finish_nontrivial(std::move(lam), "mixed coupling signs balance to zero");
        }

        // same strict sign everywhere; check the matching structure
        std::vector<int> touched(m, 0);
        touched[ve]++; touched[vf]++;
        for (const auto& pr : pairs) {
            if (!in_s[pr.x] || !in_s[pr.y]) continue; // inert: zero diagonal kills the row
            touched[pr.x]++; touched[pr.y]++;
        }
        for (int v = 0; v < m; ++v)
            if (touched[v] > 1) {
                res.detail = "structure not recognized: coupled crosses share variables";
                return res;
            }

        auto absval = [](const K& v) { return exact_sign(v) < 0 ? K{} - v : v; };

        // split coupled pairs by the 2x2 minor margin s_x s_y vs c^2
        std::vector<Pair> deficient, good;
        for (const auto& pr : pairs) {
            if (!in_s[pr.x] || !in_s[pr.y]) continue;
            int sg = exact_sign(s[pr.x] * s[pr.y] - pr.c * pr.c);
            (sg > 0 ? good : deficient).push_back(pr);
        }
        bool ef_present = in_s[ve] && in_s[vf];
        int ef_margin = ef_present ? exact_sign(s[ve] * s[vf] - k_one<K>()) : 1;

        if (deficient.empty() && ef_margin > 0) {
            res.verdict = SpanVerdict::TRIVIAL;
            res.detail = ef_present
                             ? "single-sign couplings with all block minors above the bound"
                             : "excluded cross pinned to zero by a missing square row";
            return res;
        }

        // a deficient block yields a witness: deficient pairs cancel their
        // own coupling inside a psd 2x2 block; a deficient (e,f) block then
        // absorbs every remaining coupling by growing its weights
        std::vector<K> lam(live_rows.size(), K{});
        auto zero_pair = [&](const Pair& pr) {
            K sy = absval(s[pr.y]), sx = absval(s[pr.x]);
            lam[square_row[pr.x]] = sy;
            lam[square_row[pr.y]] = sx;
            lam[pr.row] = (K{} - (s[pr.x] * sy + s[pr.y] * sx)) / pr.c;
        };
        if (ef_present && ef_margin < 0) {
            // all other square rows stay active, then t-growth on (e,f)
            for (const auto& pr : deficient) zero_pair(pr);
            K rsum{};
            for (int v = 0; v < m; ++v) {
                if (!in_s[v] || v == ve || v == vf) continue;
                bool in_def = false;
                for (const auto& pr : deficient) in_def = in_def || pr.x == v || pr.y == v;
                if (in_def) continue;
                lam[square_row[v]] = k_one<K>();
                rsum = rsum + absval(s[v]);
            }
            K se = absval(s[ve]), sf = absval(s[vf]);
            K t = k_one<K>();
            for (int it = 0; it < 512; ++it) {
                // need (rsum + 2 se sf t)^2 < 4 se sf t^2
                K lhs = rsum + from_rat<K>(Rat(2)) * se * sf * t;
                K diff = lhs * lhs - from_rat<K>(Rat(4)) * se * sf * t * t;
                if (exact_sign(diff) < 0) {
                    lam[square_row[ve]] = t * sf;
                    lam[square_row[vf]] = t * se;
                    return finish_nontrivial(std::move(lam),
                                             "excluded block minor deficiency");
                }
                t = t + t;
            }
            res.detail = "witness growth did not terminate";
            return res;
        }
        if (!deficient.empty()) {
            // no slack in the (e,f) block: only the deficient pairs combine
            for (const auto& pr : deficient) zero_pair(pr);
            return finish_nontrivial(std::move(lam), "cross block minor deficiency");
        }
        // ef_margin == 0 boundary: a psd witness supported on (e,f) alone
        {
            K se = absval(s[ve]), sf = absval(s[vf]);
            std::vector<K> lamb(live_rows.size(), K{});
            lamb[square_row[ve]] = sf;
            lamb[square_row[vf]] = se;
            return finish_nontrivial(std::move(lamb), "excluded block on the minor boundary");
        }
    } catch (const SignUndecided& e) {
        res.verdict = SpanVerdict::INCONCLUSIVE;
        res.detail = std::string("sign oracle undecided: ") + e.what();
        return res;
    }
}

template <class K>
struct UniquenessReport {
    enum class Verdict { UNIQUE, NON_UNIQUE, INCONCLUSIVE } verdict;
    std::vector<Form<K>> equivalent_quadratics; // echelon rows in the m null variables
    Matrix<K> rref_matrix;
    std::vector<int> pivot_cols;
    int m = 0;
    std::optional<RepMatrix<K>> witness_delta;   // NON_UNIQUE: psd-on-null change
    bool witness_pd_on_null = false;
    Rat epsilon;                                  // certified for rational scalars
    std::string detail;
};

/*
 * Full pipeline.  The null-space parametrization may be supplied
 * explicitly (the echelon column values depend on the chosen basis and
 * its scaling; the verdict does not, since reparametrization acts by an
 * invertible substitution on the quadratics).
 */
template <class K>
UniquenessReport<K> uniqueness_pipeline(const RepMatrix<K>& g,
                                        std::vector<SymCoords<K>> null_basis = {}) {
    UniquenessReport<K> rep;
    auto cert = psd_check_exact(g.entries);
    if (!cert.accepted)
        throw std::domain_error("pipeline input is not psd; refutation value " +
                                scalar_str<K>(cert.refutation_value));

    if (null_basis.empty()) null_basis = null_space(g);
    int m = static_cast<int>(null_basis.size());
    rep.m = m;
    if (m == 0) {
        rep.verdict = UniquenessReport<K>::Verdict::UNIQUE;
        rep.detail = "pd Gram matrix: trivial null space";
        return rep;
    }

    ChangeBasis cb = change_basis(g.n(), g.p(), g.order);

    // Step 2: quadratics D.tt in the m combination variables
    std::vector<Form<K>> quads;
    quads.reserve(cb.size());
    std::vector<RepMatrix<K>> deltas;
    deltas.reserve(cb.size());
    for (const auto& el : cb.elements) {
        RepMatrix<K> dm = el.template materialize<K>(g.order);
        Form<K> q(m, 2);
        for (int k = 0; k < m; ++k)
            for (int l = k; l < m; ++l) {
                K val = dm.quad(null_basis[k], null_basis[l]);
                if (val.is_zero()) continue;
                MultiIndex e(m, 0);
                e[k] += 1;
                e[l] += 1;
                q.add_term(e, k == l ? val : val + val);
            }
        quads.push_back(std::move(q));
        deltas.push_back(std::move(dm));
    }

    // Steps 3-4: coefficient matrix and echelon form
    int cols = quad_monomial_count(m);
    Matrix<K> coef(quads.size(), cols);
    for (size_t r = 0; r < quads.size(); ++r) {
        auto row = detail::quad_to_row(quads[r], m);
        for (int c = 0; c < cols; ++c) coef(r, c) = row[c];
    }
    auto [red, rr] = rref(coef);
    rep.rref_matrix = red;
    rep.pivot_cols = rr.pivot_cols;
    for (size_t i = 0; i < rr.rank; ++i) {
        Form<K> q(m, 2);
        for (int c = 0; c < cols; ++c) {
            if (red(i, c).is_zero()) continue;
            auto [a, b] = quad_col_decode(m, c);
            MultiIndex e(m, 0);
            e[a] += 1;
            e[b] += 1;
            q.add_term(e, red(i, c));
        }
        rep.equivalent_quadratics.push_back(std::move(q));
    }

    // Step 5
    SpanResult<K> span = psd_span_trivial(quads, m);
    switch (span.verdict) {
    case SpanVerdict::TRIVIAL:
        rep.verdict = UniquenessReport<K>::Verdict::UNIQUE;
        rep.detail = "no nonzero psd combination: " + span.detail;
        return rep;
    case SpanVerdict::INCONCLUSIVE:
        rep.verdict = UniquenessReport<K>::Verdict::INCONCLUSIVE;
        rep.detail = span.detail;
        return rep;
    case SpanVerdict::NONTRIVIAL:
        break;
    }

    // assemble the change witness
    RepMatrix<K> delta(g.order);
    for (size_t j = 0; j < deltas.size(); ++j)
        if (!span.witness[j].is_zero())
            delta = delta + deltas[j] * span.witness[j];
    rep.witness_delta = delta;
    rep.witness_pd_on_null = span.witness_pd;

    if constexpr (std::is_same_v<K, Rat>) {
        PerturbationReport pr = perturb_check(g.entries, delta.entries);
        if (pr.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS) {
            rep.verdict = UniquenessReport<K>::Verdict::NON_UNIQUE;
            rep.epsilon = pr.epsilon;
            rep.detail = "psd-on-null change certified at eps = " + pr.epsilon.str() +
                         " (" + span.detail + ")";
        } else {
            rep.verdict = UniquenessReport<K>::Verdict::INCONCLUSIVE;
            rep.detail = "psd-on-null change found, but the perturbation kernel "
                         "condition fails";
        }
    } else {
        rep.verdict = UniquenessReport<K>::Verdict::INCONCLUSIVE;
        rep.detail = "psd-on-null change found; epsilon certification needs "
                     "specialized rational entries";
    }
    return rep;
}

} // namespace soscert
