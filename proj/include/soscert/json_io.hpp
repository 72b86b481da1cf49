#pragma once

/*
 * JSON (de)serialization: matrix files, form files, obstruction
 * scripts, game boards and certificates, and certificate reports.
 * Every emitted document carries a "schema" tag.
 */

#include "soscert/game.hpp"
#include "soscert/obstruction.hpp"
#include "soscert/perturb.hpp"
#include "soscert/repmatrix.hpp"
#include "soscert/uniqueness.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace soscert {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

// ---- scalars ----------------------------------------------------------------

inline json rat_to_json(const Rat& r) { return r.str(); }
inline Rat rat_from_json(const json& j) { return Rat::parse(j.get<std::string>()); }

inline json upoly_to_json(const UniPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.str());
    return a;
}

// {modulus, residue, interval} record for a real algebraic number
inline json algnum_to_json(const AlgNum& a) {
    json j;
    j["schema"] = "soscert.algnum/1";
    j["residue"] = upoly_to_json(a.residue());
    if (a.ctx()) {
        j["modulus"] = upoly_to_json(a.ctx()->modulus);
        j["interval"] = {a.ctx()->lo.str(), a.ctx()->hi.str()};
    }
    return j;
}

// ---- representation matrices -------------------------------------------------

template <class K>
json repmatrix_to_json(const RepMatrix<K>& m, const std::string& scalar_var = "t") {
    json j;
    j["schema"] = "soscert.repmatrix/1";
    j["n"] = m.n();
    j["p"] = m.p();
    json basis = json::array();
    for (const auto& a : m.order->sequence()) basis.push_back(mi_str(a));
    j["basis_order"] = basis;
    json entries = json::array();
    for (size_t i = 0; i < m.dim(); ++i)
        for (size_t k = 0; k < m.dim(); ++k) {
            if constexpr (std::is_same_v<K, RatFunc>)
                entries.push_back(m.entries(i, k).str(scalar_var));
            else
                entries.push_back(scalar_str<K>(m.entries(i, k)));
        }
    j["entries"] = entries;
    return j;
}

inline RepMatrix<Rat> repmatrix_from_json(const json& j) {
    int n = j.at("n").get<int>();
    int p = j.at("p").get<int>();
    std::vector<MultiIndex> basis;
    for (const auto& s : j.at("basis_order")) basis.push_back(mi_parse(s.get<std::string>(), n));
    auto order = BasisOrder::explicit_order(n, p, basis);
    size_t d = order->size();
    const auto& entries = j.at("entries");
    if (entries.size() != d * d) throw std::invalid_argument("matrix entry count mismatch");
    Matrix<Rat> m(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) m(i, k) = Rat::parse(entries[i * d + k].get<std::string>());
    return RepMatrix<Rat>(order, std::move(m));
}

// ---- obstruction scripts ------------------------------------------------------

inline ChangeSpec changespec_from_json(const json& j, int n) {
    ChangeSpec cs;
    for (const auto& t : j.at("terms")) {
        SymTermSpec term;
        term.alpha = mi_parse(t.at("alpha").get<std::string>(), n);
        term.beta = mi_parse(t.at("beta").get<std::string>(), n);
        term.c = Rat::parse(t.at("c").get<std::string>());
        cs.terms.push_back(std::move(term));
    }
    return cs;
}

inline ObstructionScript obstruction_script_from_json(const json& j) {
    ObstructionScript s;
    s.name = j.at("name").get<std::string>();
    s.n = j.at("n").get<int>();
    s.p = j.at("p").get<int>();
    for (const auto& v : j.at("form_vars")) s.form_vars.push_back(v.get<std::string>());
    for (const auto& q : j.at("squares")) s.square_texts.push_back(q.get<std::string>());
    for (const auto& v : j.at("params")) s.params.push_back(v.get<std::string>());
    for (const auto& v : j.at("positive_params")) s.positive_params.insert(v.get<std::string>());
    if (j.contains("specialize"))
        for (auto it = j["specialize"].begin(); it != j["specialize"].end(); ++it)
            s.specialize[it.key()] = Rat::parse(it.value().get<std::string>());
    for (const auto& f : j.at("forced"))
        s.forced.push_back({f.at("coeff").get<std::string>(), changespec_from_json(f, s.n)});
    for (const auto& pdef : j.at("parameters"))
        s.parameters.push_back({pdef.at("name").get<std::string>(), changespec_from_json(pdef, s.n)});
    for (const auto& m : j.at("submatrix")) s.submatrix.push_back(mi_parse(m.get<std::string>(), s.n));
    auto pair_list = [&](const char* key, std::vector<std::pair<MultiIndex, MultiIndex>>& out) {
        if (!j.contains(key)) return;
        for (const auto& e : j[key])
            out.push_back({mi_parse(e.at("alpha").get<std::string>(), s.n),
                           mi_parse(e.at("beta").get<std::string>(), s.n)});
    };
    pair_list("untouchable", s.untouchable);
    pair_list("exhausted", s.exhausted);
    if (j.contains("witness")) s.witness_point = j["witness"].get<std::string>();
    if (j.contains("expected_forced"))
        for (const auto& e : j["expected_forced"])
            s.expected_forced.push_back(changespec_from_json(e, s.n));
    if (j.contains("symmetry_swap"))
        s.symmetry_swap = {j["symmetry_swap"][0].get<int>(), j["symmetry_swap"][1].get<int>()};
    if (j.contains("restricted"))
        for (const auto& r : j["restricted"]) {
            RestrictedUniquePre pre;
            for (const auto& v : r.at("kill_vars")) pre.kill_vars.push_back(v.get<int>());
            if (r.contains("pins"))
                for (const auto& e : r["pins"])
                    pre.pins.push_back({mi_parse(e.at("alpha").get<std::string>(), s.n),
                                        mi_parse(e.at("beta").get<std::string>(), s.n)});
            if (r.contains("param_interval"))
                pre.param_interval = {Rat::parse(r["param_interval"][0].get<std::string>()),
                                      Rat::parse(r["param_interval"][1].get<std::string>())};
            if (r.contains("null_basis"))
                pre.null_parametrization = r["null_basis"].get<std::string>();
            if (r.contains("null_param"))
                pre.null_param = Rat::parse(r["null_param"].get<std::string>());
            s.restricted.push_back(std::move(pre));
        }
    if (j.contains("derived_constraint")) s.derived_constraint = j["derived_constraint"];
    for (const auto& st : j.at("steps")) {
        ScriptStep step;
        std::string kind = st.at("kind").get<std::string>();
        if (kind == "nonneg_linear") step.kind = ScriptStep::Kind::NonnegLinear;
        else if (kind == "neg_square_forces") step.kind = ScriptStep::Kind::NegSquareForces;
        else if (kind == "squeeze_zero") step.kind = ScriptStep::Kind::SqueezeZero;
        else if (kind == "positive_forces") step.kind = ScriptStep::Kind::PositiveForces;
        else if (kind == "contradiction") step.kind = ScriptStep::Kind::Contradiction;
        else if (kind == "derived_report") step.kind = ScriptStep::Kind::DerivedReport;
        else throw std::invalid_argument("unknown step kind '" + kind + "'");
        if (st.contains("minor"))
            for (const auto& v : st["minor"]) step.minor.push_back(v.get<int>());
        if (st.contains("var")) step.var = st["var"].get<std::string>();
        if (st.contains("square")) step.square = st["square"].get<std::string>();
        if (st.contains("name")) step.name = st["name"].get<std::string>();
        if (st.contains("expr")) step.expr = st["expr"].get<std::string>();
        s.steps.push_back(std::move(step));
    }
    return s;
}

inline json replay_to_json(const ReplayResult& r) {
    json j;
    j["schema"] = "soscert.obstruction-replay/1";
    j["status"] = r.status == ReplayResult::Status::NONCOERCIVE_CONFIRMED
                      ? "NONCOERCIVE_CONFIRMED"
                      : "STEP_FAILED";
    if (r.status == ReplayResult::Status::STEP_FAILED) j["failed_step"] = r.failed_step;
    json pre = json::array();
    for (const auto& p : r.preconditions)
        pre.push_back({{"check", p.title}, {"detail", p.detail}, {"ok", p.ok}});
    j["preconditions"] = pre;
    json steps = json::array();
    for (const auto& st : r.steps)
        steps.push_back({{"step", st.title}, {"detail", st.detail}, {"ok", st.ok}});
    j["steps"] = steps;
    json fv = json::array();
    for (const auto& [k, v] : r.forced_values) fv.push_back({{"name", k}, {"value", v}});
    j["forced_values"] = fv;
    j["contradiction"] = r.contradiction;
    return j;
}

// ---- game boards and certificates ---------------------------------------------

inline GameBoard game_board_from_json(const json& j) {
    int n = j.at("n").get<int>();
    std::vector<std::string> vars;
    for (const auto& v : j.at("vars")) vars.push_back(v.get<std::string>());
    std::vector<std::vector<std::string>> grid;
    for (const auto& row : j.at("entries")) {
        std::vector<std::string> r;
        for (const auto& e : row) r.push_back(e.get<std::string>());
        grid.push_back(std::move(r));
    }
    return GameBoard(n, std::move(vars), std::move(grid));
}

inline GameCertificate game_certificate_from_json(const json& j) {
    GameCertificate cert;
    for (const auto& m : j.at("minors")) {
        MinorId id;
        for (const auto& v : m.at("rows")) id.rows.push_back(v.get<int>());
        for (const auto& v : m.at("cols")) id.cols.push_back(v.get<int>());
        cert.lambda[id] = Rat::parse(m.at("coeff").get<std::string>());
    }
    return cert;
}

inline json game_certificate_to_json(const GameCertificate& cert) {
    json j;
    j["schema"] = "soscert.game-certificate/1";
    json minors = json::array();
    for (const auto& [id, coeff] : cert.lambda)
        minors.push_back({{"rows", id.rows}, {"cols", id.cols}, {"coeff", coeff.str()}});
    j["minors"] = minors;
    return j;
}

// ---- reports -------------------------------------------------------------------

template <class K>
json uniqueness_report_to_json(const UniquenessReport<K>& rep,
                               const std::vector<std::string>& var_names,
                               const std::string& scalar_var = "t") {
    json j;
    j["schema"] = "soscert.uniqueness/1";
    using V = typename UniquenessReport<K>::Verdict;
    j["verdict"] = rep.verdict == V::UNIQUE      ? "UNIQUE"
                   : rep.verdict == V::NON_UNIQUE ? "NON_UNIQUE"
                                                  : "INCONCLUSIVE";
    j["detail"] = rep.detail;
    json quads = json::array();
    for (const auto& q : rep.equivalent_quadratics) {
        if constexpr (std::is_same_v<K, RatFunc>) {
            std::string s;
            for (const auto& [e, c] : q.poly().terms()) {
                if (!s.empty()) s += " + ";
                std::string mono;
                for (size_t v = 0; v < e.size(); ++v)
                    for (int k = 0; k < e[v]; ++k) mono += (mono.empty() ? "" : "*") + var_names[v];
                s += "(" + c.str(scalar_var) + ")*" + mono;
            }
            quads.push_back(s.empty() ? "0" : s);
        } else {
            quads.push_back(q.str(var_names));
        }
    }
    j["equivalent_quadratics"] = quads;
    if (rep.witness_delta) {
        j["witness_change"] = repmatrix_to_json(*rep.witness_delta, scalar_var);
        j["witness_pd_on_null"] = rep.witness_pd_on_null;
        if constexpr (std::is_same_v<K, Rat>) j["epsilon"] = rep.epsilon.str();
    }
    return j;
}

inline json perturbation_report_to_json(const PerturbationReport& rep) {
    json j;
    j["schema"] = "soscert.perturbation/1";
    bool ok = rep.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS;
    j["verdict"] = ok ? "PSD_FOR_SMALL_EPS" : "NEVER_PSD";
    if (ok) {
        j["epsilon"] = rep.epsilon.str();
        j["sum_positive_definite"] = rep.sum_positive_definite;
    } else {
        json z = json::array(), bz = json::array();
        for (const auto& v : rep.kernel_violation) z.push_back(v.str());
        for (const auto& v : rep.b_z1) bz.push_back(v.str());
        j["kernel_violation"] = z;
        j["B_times_violation"] = bz;
    }
    return j;
}

template <class K>
json ldl_to_json(const LdlCertificate<K>& c) {
    json j;
    j["schema"] = "soscert.psd-certificate/1";
    j["accepted"] = c.accepted;
    if (c.accepted) {
        j["positive_definite"] = c.positive_definite;
        j["rank"] = c.rank;
        j["permutation"] = c.perm;
        json l = json::array(), d = json::array();
        for (size_t i = 0; i < c.D.size(); ++i) {
            d.push_back(scalar_str<K>(c.D[i]));
            for (size_t k = 0; k < c.D.size(); ++k) l.push_back(scalar_str<K>(c.L(i, k)));
        }
        j["L"] = l;
        j["D"] = d;
    } else {
        json v = json::array();
        for (const auto& x : c.refutation) v.push_back(scalar_str<K>(x));
        j["refutation"] = v;
        j["value"] = scalar_str<K>(c.refutation_value);
    }
    return j;
}

} // namespace soscert
