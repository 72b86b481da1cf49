#pragma once

/*
 * Replayable noncoercivity proofs.  A script fixes a parametric Gram
 * matrix G0 + (forced changes, weight 2*delta) + (named parameter
 * changes) and walks a chain of principal-submatrix forcings: each step
 * recomputes the stated minor symbolically, derives the forced equation
 * or sign from psd necessary conditions, and the final step contradicts
 * an earlier one.  delta (and any symbolic range parameter) is treated
 * as a positive indeterminate, so a confirmed chain covers every
 * delta > 0 at once.
 *
 * Scripts are data; every claim inside one is re-derived at run time,
 * including the preconditions that pin matrix entries: class counting
 * for untouchable positions, the forced-element analysis at the complex
 * witness, and uniqueness pipelines on restricted submatrices.
 */

#include "soscert/certify.hpp"
#include "soscert/form_parse.hpp"
#include "soscert/mpoly.hpp"
#include "soscert/named_forms.hpp"
#include "soscert/repmatrix.hpp"
#include "soscert/uniqueness.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

struct SymTermSpec {
    MultiIndex alpha, beta;
    Rat c; // c * E_alpha (x)_s E_beta
};

struct ChangeSpec {
    std::vector<SymTermSpec> terms;

    template <class K>
    RepMatrix<K> materialize(const BasisOrderPtr& order, const K& scale) const {
        RepMatrix<K> m(order);
        for (const auto& t : terms) m.add_sym(t.alpha, t.beta, scale * from_rat<K>(t.c));
        return m;
    }
};

struct ScriptStep {
    enum class Kind {
        NonnegLinear,    // det = (positive) * var        => var >= 0
        NegSquareForces, // det = -(L)^2, L linear in var => var forced
        SqueezeZero,     // det = -(positive) * var, var >= 0 known => var = 0
        PositiveForces,  // det = (positive) * var - (positive) => var > 0
        Contradiction,   // det certifiably negative: no psd completion
        DerivedReport    // evaluate and report a named expression
    };
    Kind kind;
    std::vector<int> minor; // 1-based indices into the script submatrix order
    std::string var;
    std::string square; // NegSquareForces: the L with det == -(L)^2
    std::string name, expr; // DerivedReport
};

struct RestrictedUniquePre {
    std::vector<int> kill_vars;                             // form variables set to zero
    std::vector<std::pair<MultiIndex, MultiIndex>> pins;    // positions this fixes
    std::optional<std::pair<Rat, Rat>> param_interval;      // range of a leftover parameter
    std::string null_parametrization;                       // "cone-quartic", "f-rho" or empty
    Rat null_param;                                         // specialization for "f-rho"
};

struct ObstructionScript {
    std::string name;
    int n = 0, p = 0;
    std::vector<std::string> form_vars;
    std::vector<std::string> square_texts;
    std::vector<std::string> params;          // all parameter names (delta first by convention)
    std::set<std::string> positive_params;    // treated as positive indeterminates
    std::map<std::string, Rat> specialize;    // optional numeric parameter values
    std::vector<std::pair<std::string, ChangeSpec>> forced;      // coeff expression, element
    std::vector<std::pair<std::string, ChangeSpec>> parameters;  // free parameter, element
    std::vector<MultiIndex> submatrix;        // ordered principal submatrix labels
    std::vector<std::pair<MultiIndex, MultiIndex>> untouchable;  // singleton classes
    std::vector<std::pair<MultiIndex, MultiIndex>> exhausted;    // class spent on forced
    std::string witness_point;
    std::vector<ChangeSpec> expected_forced;  // forced elements at the witness
    std::optional<std::pair<int, int>> symmetry_swap;
    std::vector<RestrictedUniquePre> restricted;
    std::vector<ScriptStep> steps;
    std::string derived_constraint; // free-text note carried into the transcript
};

struct ReplayStep {
    std::string title;
    std::string detail;
    bool ok = true;
};

struct ReplayResult {
    enum class Status { NONCOERCIVE_CONFIRMED, STEP_FAILED } status;
    int failed_step = -1; // 1-based among script steps
    std::vector<ReplayStep> preconditions;
    std::vector<ReplayStep> steps;
    std::vector<std::pair<std::string, std::string>> forced_values;
    std::string contradiction;
};

namespace obst_detail {

inline int var_index(const std::vector<std::string>& names, const std::string& v) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == v) return static_cast<int>(i);
    throw std::invalid_argument("unknown script parameter '" + v + "'");
}

// all coefficients positive and all variables known strictly positive
inline bool certified_positive(const ParamPoly& p, const std::set<int>& strict) {
    if (p.is_zero()) return false;
    for (const auto& [e, c] : p.terms()) {
        if (c.sign() <= 0) return false;
        for (size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0 && !strict.count(static_cast<int>(v))) return false;
    }
    return true;
}

inline ParamPoly apply_subs(ParamPoly p, const std::vector<std::pair<int, ParamPoly>>& subs) {
    for (const auto& [v, repl] : subs) p = p.subst(v, repl);
    return p;
}

} // namespace obst_detail

class ObstructionReplay {
public:
    explicit ObstructionReplay(ObstructionScript script) : s_(std::move(script)) {
        np_ = static_cast<int>(s_.params.size());
        order_ = BasisOrder::graded_lex(s_.n, s_.p);
        build_matrix();
    }

    const RepMatrix<ParamPoly>& parametric_matrix() const { return m_; }
    const BasisOrderPtr& order() const { return order_; }

    // Symbolic determinant of a script submatrix under current substitutions.
    ParamPoly minor_det(const std::vector<int>& idx1,
                        const std::vector<std::pair<int, ParamPoly>>& subs) const {
        std::vector<int> rows;
        for (int i : idx1) {
            if (i < 1 || i > static_cast<int>(s_.submatrix.size()))
                throw std::invalid_argument("submatrix index out of range");
            rows.push_back(order_->index_of(s_.submatrix[i - 1]) + 1);
        }
        Matrix<ParamPoly> sub(rows.size(), rows.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows.size(); ++j)
                sub(i, j) = obst_detail::apply_subs(m_.entries(rows[i] - 1, rows[j] - 1), subs);
        return det_cofactor(sub);
    }

    ReplayResult run() const {
        ReplayResult out;
        run_preconditions(out);
        for (auto& pre : out.preconditions)
            if (!pre.ok) {
                out.status = ReplayResult::Status::STEP_FAILED;
                out.failed_step = 0;
                return out;
            }

        std::vector<std::pair<int, ParamPoly>> subs;
        std::set<int> geq0, gt0;
        for (const auto& name : s_.positive_params)
            if (!s_.specialize.count(name))
                gt0.insert(obst_detail::var_index(s_.params, name));
        for (const auto& [name, val] : s_.specialize)
            subs.push_back({obst_detail::var_index(s_.params, name),
                            ParamPoly(np_, val)});

        auto fail = [&](size_t k, std::string why) {
            out.steps.push_back({step_title(s_.steps[k]), std::move(why), false});
            out.status = ReplayResult::Status::STEP_FAILED;
            out.failed_step = static_cast<int>(k) + 1;
            return out;
        };

        for (size_t k = 0; k < s_.steps.size(); ++k) {
            const ScriptStep& st = s_.steps[k];
            using Kind = ScriptStep::Kind;
            if (st.kind == Kind::DerivedReport) {
                ParamPoly val = obst_detail::apply_subs(
                    parse_poly<Rat>(st.expr, s_.params), subs);
                out.forced_values.push_back({st.name, val.str(s_.params)});
                out.steps.push_back({"derive " + st.name,
                                     st.name + " = " + val.str(s_.params), true});
                continue;
            }
            ParamPoly d = minor_det(st.minor, subs);
            std::string dtxt = d.str(s_.params);
            switch (st.kind) {
            case Kind::NonnegLinear: {
                int v = obst_detail::var_index(s_.params, st.var);
                auto c = d.collect(v);
                if (c.size() != 2 || !c[0].is_zero() ||
                    !obst_detail::certified_positive(c[1], gt0))
                    return fail(k, "minor is not (positive)*" + st.var + ": " + dtxt);
                geq0.insert(v);
                out.steps.push_back({step_title(st),
                                     "det = " + dtxt + "  =>  " + st.var + " >= 0", true});
                break;
            }
            case Kind::NegSquareForces: {
                int v = obst_detail::var_index(s_.params, st.var);
                ParamPoly l = obst_detail::apply_subs(parse_poly<Rat>(st.square, s_.params), subs);
                if (!(d == -(l * l)))
                    return fail(k, "minor does not equal -(" + st.square + ")^2: " + dtxt);
                auto c = l.collect(v);
                if (c.size() != 2 || c[1].total_degree() != 0)
                    return fail(k, "square root is not linear in " + st.var);
                Rat lead = c[1].coeff(std::vector<int>(np_, 0));
                ParamPoly forced = -c[0] * lead.inv();
                subs.push_back({v, forced});
                out.forced_values.push_back({st.var, obst_detail::apply_subs(forced, subs).str(s_.params)});
                out.steps.push_back({step_title(st),
                                     "det = " + dtxt + "  =>  " + st.var + " = " +
                                         forced.str(s_.params), true});
                break;
            }
            case Kind::SqueezeZero: {
                int v = obst_detail::var_index(s_.params, st.var);
                auto c = d.collect(v);
                if (c.size() != 2 || !c[0].is_zero() ||
                    !obst_detail::certified_positive(-c[1], gt0))
                    return fail(k, "minor is not -(positive)*" + st.var + ": " + dtxt);
                if (!geq0.count(v) && !gt0.count(v))
                    return fail(k, "no prior nonnegativity fact for " + st.var);
                if (gt0.count(v))
                    return fail(k, st.var + " already forced positive; squeeze impossible");
                subs.push_back({v, ParamPoly(np_)});
                out.forced_values.push_back({st.var, "0"});
                out.steps.push_back({step_title(st),
                                     "det = " + dtxt + " >= 0 with " + st.var +
                                         " >= 0  =>  " + st.var + " = 0", true});
                break;
            }
            case Kind::PositiveForces: {
                int v = obst_detail::var_index(s_.params, st.var);
                auto c = d.collect(v);
                if (c.size() != 2 || !obst_detail::certified_positive(c[1], gt0) ||
                    !obst_detail::certified_positive(-c[0], gt0))
                    return fail(k, "minor is not (positive)*" + st.var + " - (positive): " + dtxt);
                gt0.insert(v);
                out.steps.push_back({step_title(st),
                                     "det = " + dtxt + " >= 0  =>  " + st.var + " > 0", true});
                break;
            }
            case Kind::Contradiction: {
                std::set<int> strict = gt0;
                if (!obst_detail::certified_positive(-d, strict))
                    return fail(k, "minor not certifiably negative: " + dtxt);
                out.steps.push_back({step_title(st),
                                     "det = " + dtxt + " < 0: no psd completion", true});
                out.contradiction = "submatrix " + minor_str(st.minor) + " has " + dtxt +
                                    " < 0 while psd requires >= 0";
                out.status = ReplayResult::Status::NONCOERCIVE_CONFIRMED;
                return out;
            }
            default:
                return fail(k, "unknown step kind");
            }
        }
        out.status = ReplayResult::Status::STEP_FAILED;
        out.failed_step = static_cast<int>(s_.steps.size());
        out.steps.push_back({"end of script", "script ended without a contradiction step", false});
        return out;
    }

private:
    static std::string minor_str(const std::vector<int>& m) {
        std::string s = "[";
        for (size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(m[i]);
        return s + "]";
    }
    static std::string step_title(const ScriptStep& st) {
        using Kind = ScriptStep::Kind;
        switch (st.kind) {
        case Kind::NonnegLinear: return "sign of det" + minor_str(st.minor);
        case Kind::NegSquareForces: return "det" + minor_str(st.minor) + " = -(" + st.square + ")^2";
        case Kind::SqueezeZero: return "squeeze at det" + minor_str(st.minor);
        case Kind::PositiveForces: return "det" + minor_str(st.minor) + " forces " + st.var;
        case Kind::Contradiction: return "contradiction at det" + minor_str(st.minor);
        case Kind::DerivedReport: return "derive " + st.name;
        }
        return "step";
    }

    void build_matrix() {
        std::map<std::string, ParamPoly> coeff_params;
        for (size_t i = 0; i < s_.params.size(); ++i)
            coeff_params[s_.params[i]] = ParamPoly::variable(np_, static_cast<int>(i), Rat(1));
        SosExpression<ParamPoly> sos;
        for (const auto& text : s_.square_texts)
            sos.squares.push_back(parse_form<ParamPoly>(text, s_.form_vars, coeff_params));
        sos.weights.assign(sos.squares.size(), ParamPoly(np_, Rat(1)));
        base_form_ = sos_expand(sos);
        m_ = gram_from_sos(sos, order_);
        for (const auto& [expr, change] : s_.forced) {
            ParamPoly c = parse_poly<Rat>(expr, s_.params);
            m_ = m_ + change.materialize<ParamPoly>(order_, c);
        }
        for (const auto& [pname, change] : s_.parameters) {
            ParamPoly c = coeff_params.at(pname);
            m_ = m_ + change.materialize<ParamPoly>(order_, c);
        }
        // changes must not alter the represented form
        if (!(rep_to_form(m_) == base_form_))
            throw std::logic_error("script changes alter the represented form");
    }

    void run_preconditions(ReplayResult& out) const {
        // class census over the full basis
        std::map<MultiIndex, int> class_size;
        int d = static_cast<int>(order_->size());
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                class_size[mi_add(order_->at(i), order_->at(j))]++;

        for (const auto& [a, b] : s_.untouchable) {
            int sz = class_size.at(mi_add(a, b));
            out.preconditions.push_back(
                {"untouchable (" + mi_str(a) + " ; " + mi_str(b) + ")",
                 "pair class has " + std::to_string(sz) + " member(s)", sz == 1});
        }
        for (const auto& [a, b] : s_.exhausted) {
            int sz = class_size.at(mi_add(a, b));
            bool touched = false;
            for (const auto& [expr, change] : s_.forced)
                for (const auto& t : change.terms)
                    if (mi_add(t.alpha, t.beta) == mi_add(a, b)) touched = true;
            out.preconditions.push_back(
                {"class of (" + mi_str(a) + " ; " + mi_str(b) + ") exhausted",
                 "class has " + std::to_string(sz) + " members; forced change present: " +
                     (touched ? "yes" : "no"),
                 sz == 2 && touched});
        }
        if (!s_.witness_point.empty()) {
            auto z = parse_gauss_point(s_.witness_point);
            ChangeBasis cb = change_basis(s_.n, s_.p, order_);
            auto forced = forced_delta_analysis(cb, z);
            bool ok = forced.size() == s_.expected_forced.size();
            if (ok) {
                for (const auto& fd : forced) {
                    bool matched = false;
                    for (const auto& exp : s_.expected_forced)
                        if (fd.element == exp.materialize<Rat>(order_, Rat(1))) matched = true;
                    ok = ok && matched;
                }
            }
            out.preconditions.push_back(
                {"forced change set at witness " + s_.witness_point,
                 std::to_string(forced.size()) + " basis element(s) meet the witness", ok});
        }
        if (s_.symmetry_swap) {
            auto [va, vb] = *s_.symmetry_swap;
            Form<ParamPoly> swapped(base_form_.n(), base_form_.degree());
            for (const auto& [e, c] : base_form_.poly().terms()) {
                MultiIndex e2 = e;
                std::swap(e2[va], e2[vb]);
                swapped.add_term(e2, c);
            }
            bool ok = swapped == base_form_;
            out.preconditions.push_back(
                {"form symmetric under swapping variables " + std::to_string(va) + "," +
                     std::to_string(vb),
                 ok ? "invariant" : "not invariant", ok});
        }
        for (const auto& r : s_.restricted) run_restricted(out, r);
    }

    void run_restricted(ReplayResult& out, const RestrictedUniquePre& r) const {
        // surviving basis indices: zero exponents on all killed variables
        std::vector<int> keep;
        for (int i = 0; i < static_cast<int>(order_->size()); ++i) {
            bool alive = true;
            for (int v : r.kill_vars) alive = alive && order_->at(i)[v] == 0;
            if (alive) keep.push_back(i);
        }
        // pinned positions must survive
        bool pins_ok = true;
        for (const auto& [a, b] : r.pins) {
            for (int v : r.kill_vars)
                pins_ok = pins_ok && a[v] == 0 && b[v] == 0;
        }
        // reindex onto the reduced variable set
        std::vector<int> var_map(s_.n, -1);
        int nn = 0;
        for (int v = 0; v < s_.n; ++v) {
            bool killed = false;
            for (int kv : r.kill_vars) killed = killed || kv == v;
            if (!killed) var_map[v] = nn++;
        }
        auto reduced_order_full = BasisOrder::graded_lex(nn, s_.p);
        // collect the restricted matrix; parameters must have vanished
        int pi = param_of_interest();
        bool params_gone = true;
        Matrix<RatFunc> rm(keep.size(), keep.size());
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j) {
                const ParamPoly& e = m_.entries(keep[i], keep[j]);
                RatFunc v;
                for (const auto& [expo, c] : e.terms()) {
                    int deg = 0;
                    bool foreign = false;
                    for (size_t t = 0; t < expo.size(); ++t) {
                        if (expo[t] == 0) continue;
                        if (static_cast<int>(t) == pi) deg = expo[t];
                        else foreign = true;
                    }
                    if (foreign) { params_gone = false; continue; }
                    v += RatFunc(UniPoly::monomial(deg, c));
                }
                rm(i, j) = v;
            }
        if (!params_gone) {
            out.preconditions.push_back({"restriction", "free parameters survive the restriction",
                                         false});
            return;
        }
        // map surviving labels into the reduced space
        std::map<int, int> to_reduced;
        for (size_t i = 0; i < keep.size(); ++i) {
            MultiIndex a(nn, 0);
            const MultiIndex& full = order_->at(keep[i]);
            for (int v = 0; v < s_.n; ++v)
                if (var_map[v] >= 0) a[var_map[v]] = full[v];
            to_reduced[static_cast<int>(i)] = reduced_order_full->index_of(a);
        }
        Matrix<RatFunc> rm2(reduced_order_full->size(), reduced_order_full->size());
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j)
                rm2(to_reduced[int(i)], to_reduced[int(j)]) = rm(i, j);

        bool unique_ok = false;
        std::string verdict_note;
        try {
            if (r.param_interval) {
                // reparametrize the interval (lo,hi) onto (0,1)
                auto [lo, hi] = *r.param_interval;
                UniPoly sub(std::vector<Rat>{lo, hi - lo});
                for (size_t i = 0; i < rm2.rows(); ++i)
                    for (size_t j = 0; j < rm2.cols(); ++j)
                        rm2(i, j) = RatFunc(rm2(i, j).num().compose(sub),
                                            rm2(i, j).den().compose(sub));
                RepMatrix<RatFunc> rg(reduced_order_full, rm2);
                std::vector<SymCoords<RatFunc>> basis;
                if (r.null_parametrization == "cone-quartic")
                    basis = cone_quartic_null_basis<RatFunc>(reduced_order_full, RatFunc::var());
                else if (r.null_parametrization == "f-rho")
                    basis = f_rho_null_basis<RatFunc>(reduced_order_full, RatFunc(r.null_param));
                for (const auto& t : basis)
                    if (!rg.apply(t).is_zero())
                        throw std::logic_error("declared null parametrization is not in the kernel");
                auto rep = uniqueness_pipeline(rg, basis);
                unique_ok = rep.verdict == UniquenessReport<RatFunc>::Verdict::UNIQUE;
                verdict_note = rep.detail;
            } else {
                // entries must be rational
                Matrix<Rat> rq(rm2.rows(), rm2.cols());
                for (size_t i = 0; i < rm2.rows(); ++i)
                    for (size_t j = 0; j < rm2.cols(); ++j) {
                        if (rm2(i, j).den().degree() != 0 || rm2(i, j).num().degree() > 0)
                            throw std::logic_error("restricted entries not rational");
                        rq(i, j) = rm2(i, j).num().coeff(0);
                    }
                RepMatrix<Rat> rg(reduced_order_full, rq);
                std::vector<SymCoords<Rat>> basis;
                if (r.null_parametrization == "cone-quartic")
                    basis = cone_quartic_null_basis<Rat>(reduced_order_full, r.null_param);
                else if (r.null_parametrization == "f-rho")
                    basis = f_rho_null_basis<Rat>(reduced_order_full, r.null_param);
                for (const auto& t : basis)
                    if (!rg.apply(t).is_zero())
                        throw std::logic_error("declared null parametrization is not in the kernel");
                auto rep = uniqueness_pipeline(rg, basis);
                unique_ok = rep.verdict == UniquenessReport<Rat>::Verdict::UNIQUE;
                verdict_note = rep.detail;
            }
        } catch (const std::exception& e) {
            unique_ok = false;
            verdict_note = e.what();
        }
        std::string kv;
        for (int v : r.kill_vars) kv += (kv.empty() ? "" : ",") + s_.form_vars[v];
        out.preconditions.push_back(
            {"restricted form (kill " + kv + ") has a unique Gram matrix",
             verdict_note, pins_ok && unique_ok});
    }

    int param_of_interest() const {
        // the single non-specialized symbolic range parameter, if any
        for (size_t i = 0; i < s_.params.size(); ++i) {
            const std::string& nm = s_.params[i];
            if (nm == "delta") continue;
            bool is_free_param = false;
            for (const auto& [pn, ch] : s_.parameters) is_free_param |= pn == nm;
            if (!is_free_param && !s_.specialize.count(nm)) return static_cast<int>(i);
        }
        return -1;
    }

    ObstructionScript s_;
    int np_ = 0;
    BasisOrderPtr order_;
    RepMatrix<ParamPoly> m_;
    Form<ParamPoly> base_form_;
};

} // namespace soscert
