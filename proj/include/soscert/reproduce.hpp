#pragma once

/*
 * One-command reproduction cases: each runs a full construction or
 * decision pipeline and compares the outcome against its stored
 * expected summary, emitting one named check per claim.
 */

#include "soscert/algnum.hpp"
#include "soscert/certify.hpp"
#include "soscert/game.hpp"
#include "soscert/json_io.hpp"
#include "soscert/named_forms.hpp"
#include "soscert/obstruction.hpp"
#include "soscert/perturb.hpp"
#include "soscert/uniqueness.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace soscert {

struct ReproduceCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ReproduceReport {
    std::string id;
    std::vector<ReproduceCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return !checks.empty();
    }
    void add(const std::string& name, bool good, const std::string& detail = "") {
        checks.push_back({name, good, detail});
    }
};

struct ReproduceOptions {
    Rat gamma{1, 2};
    Rat rho{-1};
    std::string data_dir;
    long game_budget = 200;
};

namespace repro {

inline UniPoly eta_cubic() { return UniPoly({Rat(1, 9), Rat(-1, 2), Rat(0), Rat(1)}); }

inline ReproduceReport eta0_cubic(const ReproduceOptions&) {
    ReproduceReport rep;
    rep.id = "eta0-cubic";
    UniPoly c = eta_cubic();
    auto roots = isolate_real_roots(c);
    rep.add("three real roots", roots.size() == 3,
            std::to_string(roots.size()) + " isolating intervals");
    rep.add("sign change across (1/4, 13/50)",
            c.eval(Rat(1, 4)).sign() > 0 && c.eval(Rat(13, 50)).sign() < 0);
    auto seq = sturm_sequence(c);
    rep.add("(1/4, 13/50) isolates one root", sturm_count(seq, Rat(1, 4), Rat(13, 50)) == 1);
    auto ctx = AlgNum::make_ctx(c, Rat(1, 4), Rat(13, 50));
    AlgNum s = AlgNum::generator(ctx);
    rep.add("sqrt(eta0) < 1/3", algnum_sign(s - AlgNum(Rat(1, 3))) == Sign::negative,
            algnum_to_json(s).dump());
    AlgNum gamma0 = AlgNum(Rat(27)) * s * s * s;
    rep.add("0 < gamma0 < 1", algnum_sign(gamma0) == Sign::positive &&
                                  algnum_sign(gamma0 - AlgNum(Rat(1))) == Sign::negative);
    return rep;
}

inline ReproduceReport sosquartic_identity(const ReproduceOptions&) {
    ReproduceReport rep;
    rep.id = "sosquartic-identity";
    auto ctx = AlgNum::make_ctx(eta_cubic(), Rat(1, 4), Rat(13, 50));
    AlgNum s = AlgNum::generator(ctx);
    std::vector<std::string> vars{"w", "x", "y", "z"};
    std::map<std::string, AlgNum> params{{"s", s}};
    SosExpression<AlgNum> e;
    e.squares = {parse_form<AlgNum>("w^2 - s*(x^2 + y^2 + z^2)", vars, params),
                 parse_form<AlgNum>("3*s*w*x - y*z", vars, params),
                 parse_form<AlgNum>("3*s*w*y - z*x", vars, params),
                 parse_form<AlgNum>("3*s*w*z - x*y", vars, params)};
    AlgNum w = AlgNum(Rat(2, 9)) / s;
    e.weights = {AlgNum(Rat(1)), w, w, w};
    Form<AlgNum> expanded = sos_expand(e);
    Form<AlgNum> target = q_eta<AlgNum>(s * s);
    // compare every one of the 35 quartic coefficients
    auto order = BasisOrder::graded_lex(4, 4);
    int matched = 0;
    for (size_t i = 0; i < order->size(); ++i)
        if (expanded.coeff(order->at(int(i))) == target.coeff(order->at(int(i)))) ++matched;
    rep.add("all 35 quartic coefficients match", matched == 35,
            std::to_string(matched) + "/35");
    return rep;
}

inline ReproduceReport cone_quartic_case(const ReproduceOptions& opt) {
    ReproduceReport rep;
    rep.id = "cone-quartic";
    // symbolic echelon column
    RatFunc g = RatFunc::var();
    auto order = BasisOrder::graded_lex(4, 2);
    auto gsym = gram_from_sos(cone_quartic<RatFunc>(g), order);
    auto rsym = uniqueness_pipeline(gsym, cone_quartic_null_basis<RatFunc>(order, g));
    int excluded = quad_col_cross(6, 4, 5);
    RatFunc one_minus = RatFunc(Rat(1)) - g;
    std::vector<RatFunc> head{g / one_minus, g / one_minus, g / one_minus,
                              RatFunc(Rat(1)) / one_minus, RatFunc(Rat(2)), RatFunc(Rat(2))};
    bool col_ok = rsym.rref_matrix.rows() == 20;
    for (int i = 0; i < 20 && col_ok; ++i) {
        RatFunc want = i < 6 ? head[i] : RatFunc();
        col_ok = rsym.rref_matrix(int(i), excluded) == want;
    }
    rep.add("echelon column matches gamma/(1-gamma) x3, 1/(1-gamma), 2, 2, 0...", col_ok);

    // specialized run
    const Rat& gv = opt.gamma;
    if (gv == Rat(1) || gv.is_zero()) {
        rep.add("gamma away from 0 and 1", false, "degenerate gamma");
        return rep;
    }
    auto gram = gram_from_sos(cone_quartic<Rat>(gv), order);
    auto r = uniqueness_pipeline(gram, cone_quartic_null_basis<Rat>(order, gv));
    bool inside = gv.sign() > 0 && gv < Rat(1);
    if (inside) {
        rep.add("verdict UNIQUE", r.verdict == UniquenessReport<Rat>::Verdict::UNIQUE, r.detail);
    } else {
        rep.add("verdict NON_UNIQUE", r.verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE,
                r.detail);
        if (r.witness_delta) {
            auto shifted = gram + *r.witness_delta * r.epsilon;
            rep.add("witness certified", psd_check_exact(shifted.entries).accepted,
                    "eps = " + r.epsilon.str());
        }
    }
    // specialized column values
    bool spec_ok = true;
    Rat om = Rat(1) - gv;
    std::vector<Rat> shead{gv / om, gv / om, gv / om, Rat(1) / om, Rat(2), Rat(2)};
    for (int i = 0; i < 20 && spec_ok; ++i) {
        Rat want = i < 6 ? shead[i] : Rat(0);
        spec_ok = r.rref_matrix(size_t(i), excluded) == want;
    }
    rep.add("specialized column values", spec_ok);
    return rep;
}

inline ReproduceReport noncoercive_quartic_case(const ReproduceOptions& opt) {
    ReproduceReport rep;
    rep.id = "noncoercive-quartic";
    auto e = noncoercive_quartic<Rat>(Rat(1, 5));
    auto wres = witness_verify(e, parse_gauss_point("1,i,0,0,0,0"));
    rep.add("(1,i,0,0,0,0) kills all five squares", wres.all_vanish);

    auto cb = change_basis(6, 2);
    auto forced = forced_delta_analysis(cb, parse_gauss_point("1,i,0,0,0,0"));
    RepMatrix<Rat> delta1(cb.order);
    delta1.add_sym({1, 1, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, Rat(1, 2));
    delta1.add_sym({2, 0, 0, 0, 0, 0}, {0, 2, 0, 0, 0, 0}, Rat(-1, 2));
    rep.add("exactly one forced element, pairing to 1",
            forced.size() == 1 && forced[0].element == delta1 && forced[0].rr == Rat(1) &&
                forced[0].qq == Rat(1) && forced[0].rq == Rat(0));

    auto script = obstruction_script_from_json(
        load_json_file(opt.data_dir + "/scripts/noncoercive_quartic.json"));
    ObstructionReplay replay(script);
    ParamPoly l = parse_poly<Rat>("b - a*gamma", script.params);
    rep.add("det[3 4 5] = -(b - a*gamma)^2", replay.minor_det({3, 4, 5}, {}) == -(l * l));
    ParamPoly l2 = parse_poly<Rat>("e - d*gamma", script.params);
    rep.add("det[2 4 5] = -(e - d*gamma)^2", replay.minor_det({2, 4, 5}, {}) == -(l2 * l2));
    auto result = replay.run();
    bool pre_ok = true;
    for (const auto& p : result.preconditions) pre_ok = pre_ok && p.ok;
    rep.add("preconditions verified", pre_ok);
    rep.add("contradiction confirmed for every delta > 0",
            result.status == ReplayResult::Status::NONCOERCIVE_CONFIRMED, result.contradiction);
    return rep;
}

inline ReproduceReport frho_column(const ReproduceOptions& opt) {
    ReproduceReport rep;
    rep.id = "frho-column";
    RatFunc g = RatFunc::var();
    auto order = BasisOrder::graded_lex(3, 3);
    auto gram = gram_from_sos(f_rho<RatFunc>(g), order);
    auto r = uniqueness_pipeline(gram, f_rho_null_basis<RatFunc>(order, g));
    int excluded = quad_col_cross(7, 4, 5);
    UniPoly t = UniPoly::var();
    RatFunc denom(UniPoly::one() - t * t * t * Rat(4));
    RatFunc sigma = RatFunc(UniPoly::one() - t * t * t * Rat(16)) / (RatFunc(t) * denom);
    RatFunc tau = RatFunc(t * Rat(3)) / denom;
    RatFunc phi = RatFunc(t * t * Rat(4)) * RatFunc(t * t * t * Rat(2) + UniPoly::one()) / denom;
    std::vector<RatFunc> col(27, RatFunc());
    col[0] = -sigma; col[1] = -tau; col[2] = -sigma; col[3] = -tau;
    col[4] = -sigma; col[5] = -tau; col[6] = -phi;
    col[7] = RatFunc(Rat(-1));
    col[18] = RatFunc(Rat(-1));
    bool ok = r.rref_matrix.rows() == 27;
    for (int i = 0; i < 27 && ok; ++i) ok = r.rref_matrix(size_t(i), excluded) == col[i];
    rep.add("column matches -sigma, -tau, ..., -phi with the -1 at ab and cd", ok);

    // specialized values at the requested rho
    const Rat& rv = opt.rho;
    Rat d = Rat(1) - Rat(4) * rv * rv * rv;
    if (rv.is_zero() || d.is_zero()) {
        rep.add("rho away from the poles", false);
        return rep;
    }
    Rat sv = (Rat(1) - Rat(16) * rv * rv * rv) / (rv * d);
    Rat tv = Rat(3) * rv / d;
    Rat pv = Rat(4) * rv * rv * (Rat(2) * rv * rv * rv + Rat(1)) / d;
    auto gram2 = gram_from_sos(f_rho<Rat>(rv), order);
    auto r2 = uniqueness_pipeline(gram2, f_rho_null_basis<Rat>(order, rv));
    bool sok = r2.rref_matrix(0, excluded) == -sv && r2.rref_matrix(1, excluded) == -tv &&
               r2.rref_matrix(6, excluded) == -pv;
    rep.add("specialized sigma/tau/phi values", sok,
            "sigma = " + sv.str() + ", tau = " + tv.str() + ", phi = " + pv.str());
    return rep;
}

inline ReproduceReport frho_intervals(const ReproduceOptions&) {
    ReproduceReport rep;
    rep.id = "frho-intervals";
    // interval membership decided over Q[sqrt 3]
    auto ctx = AlgNum::make_ctx(UniPoly({Rat(-3), Rat(0), Rat(1)}), Rat(1), Rat(2));
    AlgNum rt3 = AlgNum::generator(ctx);
    AlgNum lo = (AlgNum(Rat(-5)) - AlgNum(Rat(3)) * rt3) * AlgNum(Rat(1, 4));  // -(5+3sqrt3)/4
    AlgNum hi = (AlgNum(Rat(-5)) + AlgNum(Rat(3)) * rt3) * AlgNum(Rat(1, 4));  // (-5+3sqrt3)/4
    auto member = [&](const Rat& r) {
        AlgNum r3 = AlgNum(r * r * r);
        bool left = algnum_sign(r3 - lo) == Sign::positive &&
                    algnum_sign(r3 - AlgNum(Rat(-1, 2))) == Sign::negative;
        bool right = algnum_sign(r3) == Sign::positive && algnum_sign(r3 - hi) == Sign::negative;
        return left || right;
    };
    auto order = BasisOrder::graded_lex(3, 3);
    std::vector<Rat> samples{Rat(-2), Rat(-1), Rat(-4, 5), Rat(-3, 5), Rat(1, 5), Rat(1, 2), Rat(1)};
    for (const auto& rv : samples) {
        auto gram = gram_from_sos(f_rho<Rat>(rv), order);
        auto r = uniqueness_pipeline(gram, f_rho_null_basis<Rat>(order, rv));
        bool expect_unique = member(rv);
        bool got_unique = r.verdict == UniquenessReport<Rat>::Verdict::UNIQUE;
        bool got_nonunique = r.verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE;
        // sign of sigma tau - 1 = (3(1-16u) - (1-4u)^2)/(1-4u)^2 at u = rho^3
        Rat u = rv * rv * rv;
        Rat stm1_num = Rat(3) * (Rat(1) - Rat(16) * u) - (Rat(1) - Rat(4) * u) * (Rat(1) - Rat(4) * u);
        bool st_gt1 = stm1_num.sign() > 0;
        // uniqueness holds exactly when sigma tau > 1 together with a single sign
        Rat d = Rat(1) - Rat(4) * u;
        Rat sv = (Rat(1) - Rat(16) * u) / (rv * d);
        Rat tv = Rat(3) * rv / d;
        Rat pv = Rat(4) * rv * rv * (Rat(2) * u + Rat(1)) / d;
        bool same_sign = (sv.sign() > 0 && tv.sign() > 0 && pv.sign() > 0) ||
                         (sv.sign() < 0 && tv.sign() < 0 && pv.sign() < 0);
        rep.add("rho = " + rv.str(),
                (expect_unique ? got_unique : got_nonunique) &&
                    expect_unique == (st_gt1 && same_sign),
                std::string(got_unique ? "UNIQUE" : (got_nonunique ? "NON_UNIQUE" : "INCONCLUSIVE")) +
                    ", sigma*tau - 1 sign " + std::to_string(stm1_num.sign()));
    }
    return rep;
}

inline ReproduceReport s_eta0_relation(const ReproduceOptions&) {
    ReproduceReport rep;
    rep.id = "s-eta0-relation";
    auto ctx = AlgNum::make_ctx(UniPoly({Rat(-5), Rat(0), Rat(1)}), Rat(2), Rat(9, 4));
    AlgNum rt5 = AlgNum::generator(ctx);
    AlgNum rho = (rt5 - AlgNum(Rat(1))) * AlgNum(Rat(1, 4));
    rep.add("rho = 1/(1+sqrt5)", (AlgNum(Rat(1)) + rt5) * rho == AlgNum(Rat(1)));
    AlgNum eta0 = rho * rho * rho;
    Form<AlgNum> lhs = s_eta<AlgNum>(eta0);
    Form<AlgNum> rhs = sos_expand(f_rho<AlgNum>(rho)) * (AlgNum(Rat(1)) + rt5);
    rep.add("s_eta0 = (1+sqrt5) f_rho over Q[sqrt5]", lhs == rhs);

    // common-root parameter witnesses
    auto ctx3 = AlgNum::make_ctx(UniPoly({Rat(-3), Rat(0), Rat(1)}), Rat(1), Rat(2));
    AlgNum r3 = (AlgNum::generator(ctx3) - AlgNum(Rat(1))) * AlgNum(Rat(1, 2));
    auto cubics = f_rho<AlgNum>(r3);
    std::vector<AlgNum> ones{AlgNum(Rat(1)), AlgNum(Rat(1)), AlgNum(Rat(1))};
    bool vanish = true;
    for (const auto& c : cubics.squares) vanish = vanish && c.eval_at<AlgNum>(ones).is_zero();
    rep.add("cubics vanish at (1,1,1) for rho = (-1+sqrt3)/2", vanish);

    ParamPoly rp = ParamPoly::variable(2, 0, Rat(1)), cp = ParamPoly::variable(2, 1, Rat(1));
    auto fr = f_rho<ParamPoly>(rp);
    std::vector<ParamPoly> pt{ParamPoly(2, Rat(1)), ParamPoly(2), cp};
    bool reduced_zero = true;
    for (const auto& cubic : fr.squares) {
        ParamPoly val = cubic.eval_at<ParamPoly>(pt);
        val = reduce_power(val, 1, 2, rp * rp * Rat(2));
        val = reduce_power(val, 0, 3, ParamPoly(2, Rat(-1, 2)));
        reduced_zero = reduced_zero && val.is_zero();
    }
    rep.add("cubics vanish at (1,0,c) modulo rho^3 = -1/2, c^2 = 2 rho^2", reduced_zero);
    return rep;
}

inline ReproduceReport noncoercive_sextic_case(const ReproduceOptions& opt) {
    ReproduceReport rep;
    rep.id = "noncoercive-sextic";
    auto s = noncoercive_sextic<Rat>();
    auto wres = witness_verify(s, parse_gauss_point("1,i,0,0"));
    rep.add("(1,i,0,0) kills all four cubes", wres.all_vanish);

    Form<Rat> fm1 = sos_expand(f_rho<Rat>(Rat(-1)));
    auto wx = parse_form<Rat>("w^2 + x^2", {"w", "x", "y", "z"});
    rep.add("even substitution matches term-for-term",
            even_substitute(fm1, 0, wx, {1, 2, 3}) == sos_expand(s));

    auto script = obstruction_script_from_json(
        load_json_file(opt.data_dir + "/scripts/noncoercive_sextic.json"));
    auto result = ObstructionReplay(script).run();
    bool pre_ok = true;
    for (const auto& p : result.preconditions) pre_ok = pre_ok && p.ok;
    rep.add("preconditions verified", pre_ok);
    std::map<std::string, std::string> forced(result.forced_values.begin(),
                                              result.forced_values.end());
    rep.add("a = delta, b = delta, c = 0 forced",
            forced["a"] == "delta" && forced["b"] == "delta" && forced["c"] == "0");
    rep.add("d = -2 delta contradiction",
            result.status == ReplayResult::Status::NONCOERCIVE_CONFIRMED &&
                forced["d"] == "-2*delta",
            result.contradiction);
    return rep;
}

inline ReproduceReport game_n4(const ReproduceOptions& opt) {
    ReproduceReport rep;
    rep.id = "game-n4";
    auto board = game_board_from_json(load_json_file(opt.data_dir + "/game/n4_board.json"));
    auto cert = game_certificate_from_json(
        load_json_file(opt.data_dir + "/game/n4_certificate.json"));
    rep.add("stored combination is pd", game_verify(board, cert).kind == GameVerdict::Kind::PD);
    auto found = game_search(board, opt.game_budget);
    rep.add("search rediscovers a pd combination",
            found.has_value() && game_verify(board, *found).kind == GameVerdict::Kind::PD,
            found ? std::to_string(found->lambda.size()) + " minors" : "not found");
    return rep;
}

inline ReproduceReport matrixprop_example(const ReproduceOptions&) {
    ReproduceReport rep;
    rep.id = "matrixprop-example";
    for (Rat b : {Rat(1), Rat(-1), Rat(1, 7)}) {
        Matrix<Rat> a(3, 3), bb(3, 3);
        a(0, 0) = Rat(1);
        bb(0, 1) = b; bb(1, 0) = b; bb(2, 2) = Rat(1);
        auto r = perturb_check(a, bb);
        rep.add("counterexample refutes at b = " + b.str(),
                r.verdict == PerturbationReport::Verdict::NEVER_PSD);
    }
    Matrix<Rat> a0(3, 3);
    a0(0, 0) = Rat(1);
    auto r0 = perturb_check(a0, Matrix<Rat>(3, 3));
    rep.add("zero perturbation accepted",
            r0.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS);

    auto order = BasisOrder::graded_lex(3, 2);
    RepMatrix<Rat> ga(order);
    ga.add_sym({2, 0, 0}, {2, 0, 0}, Rat(1, 2));
    ga.add_sym({0, 2, 0}, {0, 2, 0}, Rat(1, 2));
    ga.add_sym({2, 0, 0}, {0, 2, 0}, Rat(1));
    ga.add_sym({0, 0, 2}, {0, 0, 2}, Rat(1, 2));
    ga.add_sym({0, 1, 1}, {0, 1, 1}, Rat(1, 2));
    ga.add_sym({1, 0, 1}, {1, 0, 1}, Rat(1, 2));
    RepMatrix<Rat> delta(order);
    delta.add_sym({0, 0, 2}, {1, 1, 0}, Rat(1));
    delta.add_sym({0, 1, 1}, {1, 0, 1}, Rat(-1));
    auto rd = perturb_check(ga.entries, delta.entries);
    bool viol_ok = rd.verdict == PerturbationReport::Verdict::NEVER_PSD;
    if (viol_ok) {
        SymCoords<Rat> zt(order);
        for (size_t i = 0; i < order->size(); ++i)
            zt.coords[i] = rd.kernel_violation[i] / order->self_inner(int(i));
        viol_ok = !zt.at({1, 1, 0}).is_zero();
        for (size_t i = 0; i < order->size() && viol_ok; ++i)
            if (order->at(int(i)) != MultiIndex{1, 1, 0}) viol_ok = zt.coords[i].is_zero();
    }
    rep.add("tensor change refutes with violation along E110", viol_ok);
    return rep;
}

} // namespace repro

inline std::vector<std::string> reproduce_case_names() {
    return {"eta0-cubic",      "sosquartic-identity", "cone-quartic",   "noncoercive-quartic",
            "frho-column",     "frho-intervals",      "s-eta0-relation", "noncoercive-sextic",
            "game-n4",         "matrixprop-example"};
}

inline ReproduceReport run_reproduce_case(const std::string& id, const ReproduceOptions& opt) {
    if (id == "eta0-cubic") return repro::eta0_cubic(opt);
    if (id == "sosquartic-identity") return repro::sosquartic_identity(opt);
    if (id == "cone-quartic") return repro::cone_quartic_case(opt);
    if (id == "noncoercive-quartic") return repro::noncoercive_quartic_case(opt);
    if (id == "frho-column") return repro::frho_column(opt);
    if (id == "frho-intervals") return repro::frho_intervals(opt);
    if (id == "s-eta0-relation") return repro::s_eta0_relation(opt);
    if (id == "noncoercive-sextic") return repro::noncoercive_sextic_case(opt);
    if (id == "game-n4") return repro::game_n4(opt);
    if (id == "matrixprop-example") return repro::matrixprop_example(opt);
    throw std::invalid_argument("unknown reproduction case '" + id + "'");
}

inline json reproduce_report_to_json(const ReproduceReport& rep) {
    json j;
    j["schema"] = "soscert.reproduce/1";
    j["case"] = rep.id;
    j["ok"] = rep.ok();
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    j["checks"] = checks;
    return j;
}

} // namespace soscert
