#pragma once

/*
 * The minor game.  A board is a symmetric n x n matrix of linear forms
 * in real variables whose [1 2] principal block is exactly
 * [[b+c, a],[a, -b+c]], with a, b banned and c required outside that
 * block.  Every 2x2 minor of the board is a quadratic form that a
 * change can realize; the goal is a combination of minors other than
 * det[1 2] making a^2 + b^2 - c^2 + sum psd (better: pd).
 *
 * The search is a bounded exact one: pick a small set of cross terms
 * allowed to survive, and solve a rational LP whose constraints force
 * every other cross coefficient to zero, keep diagonals above a margin
 * and dominate the surviving crosses blockwise.  Any found combination
 * is re-verified by an exact psd check, so the LP layer is only a
 * generator of candidates, never the judge.
 */

#include "soscert/form_parse.hpp"
#include "soscert/ldl.hpp"
#include "soscert/mpoly.hpp"
#include "soscert/simplex.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

struct MinorId {
    std::vector<int> rows, cols; // 1-based, each {i<j}, rows <= cols lexicographically
    bool operator<(const MinorId& o) const {
        return std::tie(rows, cols) < std::tie(o.rows, o.cols);
    }
    bool operator==(const MinorId& o) const { return rows == o.rows && cols == o.cols; }
    std::string str() const {
        auto part = [](const std::vector<int>& v) {
            return std::to_string(v[0]) + "," + std::to_string(v[1]);
        };
        return "[" + part(rows) + "|" + part(cols) + "]";
    }
};

class GameBoard {
public:
    GameBoard(int n, std::vector<std::string> vars, std::vector<std::vector<std::string>> grid)
        : n_(n), vars_(std::move(vars)) {
        if (static_cast<int>(grid.size()) != n)
            throw std::invalid_argument("board grid has wrong row count");
        nv_ = static_cast<int>(vars_.size());
        t_ = Matrix<ParamPoly>(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(grid[i].size()) != n)
                throw std::invalid_argument("board grid has a ragged row");
            for (int j = 0; j < n; ++j) t_(i, j) = parse_poly<Rat>(grid[i][j], vars_);
        }
        validate();
    }

    int n() const { return n_; }
    int var_count() const { return nv_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const Matrix<ParamPoly>& entries() const { return t_; }

    // All distinct 2x2 minors, det[1 2] excluded.
    std::vector<MinorId> admissible_minors() const {
        std::vector<MinorId> out;
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j)
                for (int k = 1; k <= n_; ++k)
                    for (int l = k + 1; l <= n_; ++l) {
                        if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                        MinorId id{{i, j}, {k, l}};
                        if (id.rows == std::vector<int>{1, 2} && id.cols == id.rows) continue;
                        out.push_back(std::move(id));
                    }
        return out;
    }

    ParamPoly minor_poly(const MinorId& id) const {
        int i = id.rows[0] - 1, j = id.rows[1] - 1, k = id.cols[0] - 1, l = id.cols[1] - 1;
        return t_(i, k) * t_(j, l) - t_(i, l) * t_(j, k);
    }

    ParamPoly goal_poly() const {
        // a^2 + b^2 - c^2
        ParamPoly a = ParamPoly::variable(nv_, 0, Rat(1));
        ParamPoly b = ParamPoly::variable(nv_, 1, Rat(1));
        ParamPoly c = ParamPoly::variable(nv_, 2, Rat(1));
        return a * a + b * b - c * c;
    }

private:
    void validate() const {
        if (nv_ < 3 || vars_[0] != "a" || vars_[1] != "b" || vars_[2] != "c")
            throw std::invalid_argument("board variables must start a, b, c");
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (!(t_(i, j) == t_(j, i)))
                    throw std::invalid_argument("board must be symmetric");
                if (t_(i, j).total_degree() > 1)
                    throw std::invalid_argument("board entries must be linear");
            }
        ParamPoly a = ParamPoly::variable(nv_, 0, Rat(1));
        ParamPoly b = ParamPoly::variable(nv_, 1, Rat(1));
        ParamPoly c = ParamPoly::variable(nv_, 2, Rat(1));
        if (!(t_(0, 0) == b + c) || !(t_(0, 1) == a) || !(t_(1, 1) == c - b))
            throw std::invalid_argument("the [1 2] block must be [[b+c, a],[a, -b+c]]");
        bool c_outside = false;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (i < 2 && j < 2) continue;
                if (t_(i, j).degree_in(0) > 0 || t_(i, j).degree_in(1) > 0)
                    throw std::invalid_argument("a and b may not appear outside the [1 2] block");
                if (t_(i, j).degree_in(2) > 0) c_outside = true;
            }
        if (!c_outside)
            throw std::invalid_argument("c must appear outside the [1 2] block");
        rank_one_scan();
    }

    /*
     * Bounded exact scan for a reachable rank-one matrix: for grid
     * vectors v and sign eps the system t(vars) = eps v v^T is linear
     * in the board variables, so consistency is an exact solve.  Not a
     * completeness proof; a hit is a hard construction error.
     */
    void rank_one_scan() const {
        std::vector<Rat> grid{Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2)};
        std::vector<int> idx(n_, 0);
        std::vector<Rat> v(n_);
        while (true) {
            bool nonzero = false;
            for (int i = 0; i < n_; ++i) {
                v[i] = grid[idx[i]];
                nonzero = nonzero || !v[i].is_zero();
            }
            if (nonzero) {
                for (int sgn = 0; sgn < 2; ++sgn) {
                    if (check_rank_one(v, sgn == 0 ? Rat(1) : Rat(-1))) {
                        std::string vs;
                        for (int i = 0; i < n_; ++i) vs += (i ? "," : "") + v[i].str();
                        throw std::invalid_argument(
                            "board reaches a rank-1 matrix at v = (" + vs + ")");
                    }
                }
            }
            int pos = 0;
            while (pos < n_ && ++idx[pos] == static_cast<int>(grid.size())) idx[pos++] = 0;
            if (pos == n_) break;
        }
    }

    bool check_rank_one(const std::vector<Rat>& v, const Rat& eps) const {
        // rows: entries (i<=j); unknowns: board variables
        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                std::vector<Rat> row(nv_, Rat(0));
                for (const auto& [e, c] : t_(i, j).terms()) {
                    for (int vv = 0; vv < nv_; ++vv)
                        if (e[vv] == 1) row[vv] = c;
                }
                rows.push_back(std::move(row));
                rhs.push_back(eps * v[i] * v[j]);
            }
        Matrix<Rat> m(rows);
        auto x = solve_any(m, rhs);
        if (x.empty()) return false; // inconsistent
        for (size_t r = 0; r < rows.size(); ++r) {
            Rat s(0);
            for (int vv = 0; vv < nv_; ++vv) s += rows[r][vv] * x[vv];
            if (s != rhs[r]) return false;
        }
        return true;
    }

    int n_, nv_ = 0;
    std::vector<std::string> vars_;
    Matrix<ParamPoly> t_;
};

struct GameCertificate {
    std::map<MinorId, Rat> lambda;
};

struct GameVerdict {
    enum class Kind { PD, PSD, NOT_PSD } kind;
    std::vector<Rat> witness;    // v.Qv < 0 when NOT_PSD
    Matrix<Rat> combination;     // the quadratic form of the combination
};

// Assemble a^2 + b^2 - c^2 + sum lambda * minor and certify it exactly.
inline GameVerdict game_verify(const GameBoard& board, const GameCertificate& cert) {
    for (const auto& [id, coeff] : cert.lambda)
        if (id.rows == std::vector<int>{1, 2} && id.cols == id.rows)
            throw std::invalid_argument("det[1 2] is not allowed in the combination");
    int m = board.var_count();
    ParamPoly q = board.goal_poly();
    for (const auto& [id, coeff] : cert.lambda) {
        if (coeff.is_zero()) continue;
        q += board.minor_poly(id) * coeff;
    }
    Matrix<Rat> qm(m, m);
    for (const auto& [e, c] : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < m; ++v) {
            if (e[v] == 2) { i = j = v; break; }
            if (e[v] == 1) { (i < 0 ? i : j) = v; }
        }
        if (i == j) qm(i, i) = c;
        else {
            qm(i, j) = c / Rat(2);
            qm(j, i) = c / Rat(2);
        }
    }
    auto ldl = psd_check_exact(qm);
    GameVerdict v;
    v.combination = qm;
    if (!ldl.accepted) {
        v.kind = GameVerdict::Kind::NOT_PSD;
        v.witness = ldl.refutation;
    } else {
        v.kind = ldl.positive_definite ? GameVerdict::Kind::PD : GameVerdict::Kind::PSD;
    }
    return v;
}

/*
 * Bounded search: enumerate small sets of surviving cross terms, and
 * for each solve an exact LP that zeroes all other crosses, keeps the
 * diagonal above a margin, and bounds each surviving cross against its
 * two diagonals.  Budget counts LP attempts.
 */
inline std::optional<GameCertificate> game_search(const GameBoard& board, long budget = 200) {
    if (budget <= 0) return std::nullopt;
    int m = board.var_count();
    auto minors = board.admissible_minors();
    size_t nm = minors.size();
    std::vector<ParamPoly> mp;
    mp.reserve(nm);
    for (const auto& id : minors) mp.push_back(board.minor_poly(id));
    ParamPoly goal = board.goal_poly();

    // monomial layout
    auto col_of = [&](int i, int j) {
        if (i == j) return i;
        if (i > j) std::swap(i, j);
        int base = m;
        for (int r = 0; r < i; ++r) base += m - 1 - r;
        return base + (j - i - 1);
    };
    int ncols = m * (m + 1) / 2;
    auto poly_row = [&](const ParamPoly& p) {
        std::vector<Rat> row(ncols, Rat(0));
        for (const auto& [e, c] : p.terms()) {
            int i = -1, j = -1;
            for (int v = 0; v < m; ++v) {
                if (e[v] == 2) { i = j = v; break; }
                if (e[v] == 1) { (i < 0 ? i : j) = v; }
            }
            row[col_of(i, j)] = c;
        }
        return row;
    };
    std::vector<std::vector<Rat>> minor_rows;
    minor_rows.reserve(nm);
    for (const auto& p : mp) minor_rows.push_back(poly_row(p));
    std::vector<Rat> goal_row = poly_row(goal);

    // candidate cross patterns: none, single pairs, two disjoint pairs
    std::vector<std::vector<std::pair<int, int>>> patterns;
    patterns.push_back({});
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) patterns.push_back({{i, j}});
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = i + 1; k < m; ++k)
                for (int l = k + 1; l < m; ++l) {
                    if (k == j || l == j) continue;
                    patterns.push_back({{i, j}, {k, l}});
                }

    const Rat margin(1, 10), gap(1, 20);
    long attempts = 0;
    for (const auto& pat : patterns) {
        if (attempts++ >= budget) break;
        /*
         * LP variables: lambda+ (nm), lambda- (nm), then one slack per
         * inequality row.  Equalities: every cross monomial not in the
         * pattern has combined coefficient zero.  Inequalities:
         *   diag_v >= margin                      (v not a, b)
         *   +-cross_uv/2 <= diag_u - gap, diag_v - gap   for (u,v) in pattern
         */
        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        std::vector<int> ineq; // 1 for <=, 0 for ==
        auto lam_coeff = [&](int moncol) {
            std::vector<Rat> r(nm);
            for (size_t t = 0; t < nm; ++t) r[t] = minor_rows[t][moncol];
            return r;
        };
        auto push_row = [&](const std::vector<Rat>& lam, Rat constant, Rat bound, bool le) {
            // sum lam * lambda + constant (<= or ==) bound
            rows.push_back(lam);
            rhs.push_back(bound - constant);
            ineq.push_back(le ? 1 : 0);
        };
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                bool in_pat = false;
                for (auto [u, v] : pat) in_pat = in_pat || (u == i && v == j);
                int colm = col_of(i, j);
                if (!in_pat) {
                    push_row(lam_coeff(colm), goal_row[colm], Rat(0), false);
                }
            }
        for (int v = 2; v < m; ++v) {
            // -diag_v <= -margin
            auto lam = lam_coeff(col_of(v, v));
            for (auto& x : lam) x = -x;
            push_row(lam, -goal_row[col_of(v, v)], -margin, true);
        }
        for (auto [u, v] : pat) {
            int cuv = col_of(u, v);
            for (int sgn = 0; sgn < 2; ++sgn)
                for (int d : {u, v}) {
                    // sgn*cross/2 - diag_d <= -gap
                    auto lam = lam_coeff(cuv);
                    Rat cst = goal_row[cuv];
                    for (auto& x : lam) x = x / Rat(2);
                    cst = cst / Rat(2);
                    if (sgn) {
                        for (auto& x : lam) x = -x;
                        cst = -cst;
                    }
                    auto dlam = lam_coeff(col_of(d, d));
                    for (size_t t = 0; t < nm; ++t) lam[t] -= dlam[t];
                    cst -= goal_row[col_of(d, d)];
                    push_row(lam, cst, -gap, true);
                }
        }

        // standard form: columns [lambda+ | lambda- | slacks]
        size_t nslack = 0;
        for (int e : ineq) nslack += e;
        size_t ncolsl = 2 * nm + nslack;
        Matrix<Rat> A(rows.size(), ncolsl);
        std::vector<Rat> b(rows.size());
        size_t sl = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            for (size_t t = 0; t < nm; ++t) {
                A(r, t) = rows[r][t];
                A(r, nm + t) = -rows[r][t];
            }
            if (ineq[r]) A(r, 2 * nm + sl++) = Rat(1);
            b[r] = rhs[r];
        }
        auto x = lp_feasible_point(A, b);
        if (!x) continue;
        GameCertificate cert;
        for (size_t t = 0; t < nm; ++t) {
            Rat l = (*x)[t] - (*x)[nm + t];
            if (!l.is_zero()) cert.lambda[minors[t]] = l;
        }
        auto verdict = game_verify(board, cert);
        if (verdict.kind == GameVerdict::Kind::PD) return cert;
    }
    return std::nullopt;
}

// The playable 4x4 example board.
inline GameBoard game_board_n4() {
    return GameBoard(4, {"a", "b", "c", "d", "e", "f"},
                     {{"b+c", "a", "e", "f"},
                      {"a", "-b+c", "d", "e"},
                      {"e", "d", "c+d", "f"},
                      {"f", "e", "f", "c-d"}});
}

// A frozen pd combination for the 4x4 board, re-verified by callers.
inline GameCertificate game_certificate_n4() {
    GameCertificate cert;
    cert.lambda[{{1, 3}, {1, 3}}] = Rat(1);
    cert.lambda[{{1, 4}, {1, 4}}] = Rat(1);
    cert.lambda[{{2, 3}, {2, 3}}] = Rat(1);
    cert.lambda[{{2, 4}, {2, 4}}] = Rat(1);
    cert.lambda[{{3, 4}, {3, 4}}] = Rat(-5, 2);
    cert.lambda[{{1, 4}, {2, 3}}] = Rat(-11, 5);
    return cert;
}

} // namespace soscert
