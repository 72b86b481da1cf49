#include <doctest.h>

#include "soscert/certify.hpp"
#include "soscert/json_io.hpp"
#include "soscert/named_forms.hpp"
#include "soscert/obstruction.hpp"
#include "soscert/perturb.hpp"
#include "soscert/uniqueness.hpp"

#include <random>

using namespace soscert;

namespace {
std::mt19937_64 rng(55501);
Rat rand_rat() {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    return Rat(num(rng), den(rng));
}

ObstructionScript quartic_script() {
    return obstruction_script_from_json(
        load_json_file(std::string(SOSCERT_DATA_DIR) + "/scripts/noncoercive_quartic.json"));
}
ObstructionScript sextic_script() {
    return obstruction_script_from_json(
        load_json_file(std::string(SOSCERT_DATA_DIR) + "/scripts/noncoercive_sextic.json"));
}

UniquenessReport<Rat> run_cone(const Rat& g) {
    auto order = BasisOrder::graded_lex(4, 2);
    auto gram = gram_from_sos(cone_quartic<Rat>(g), order);
    return uniqueness_pipeline(gram, cone_quartic_null_basis<Rat>(order, g));
}
UniquenessReport<Rat> run_frho(const Rat& r) {
    auto order = BasisOrder::graded_lex(3, 3);
    auto gram = gram_from_sos(f_rho<Rat>(r), order);
    return uniqueness_pipeline(gram, f_rho_null_basis<Rat>(order, r));
}
} // namespace

TEST_CASE("uniqueness pipeline on the cone quartic") {
    for (Rat g : {Rat(1, 10), Rat(1, 2), Rat(9, 10)}) {
        auto rep = run_cone(g);
        CHECK(rep.verdict == UniquenessReport<Rat>::Verdict::UNIQUE);
    }
    for (Rat g : {Rat(-1), Rat(2)}) {
        auto rep = run_cone(g);
        REQUIRE(rep.verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE);
        REQUIRE(rep.witness_delta.has_value());
        CHECK(rep.witness_pd_on_null);
        CHECK(rep.epsilon.sign() > 0);
        // soundness: the perturbed matrix is psd and differs by a change
        auto order = rep.witness_delta->order;
        auto gram = gram_from_sos(cone_quartic<Rat>(g), order);
        auto shifted = gram + *rep.witness_delta * rep.epsilon;
        CHECK(psd_check_exact(shifted.entries).accepted);
        auto cb = change_basis(4, 2, order);
        auto dec = decompose_into_changes(gram, shifted, cb);
        CHECK(dec.ok);
        bool nonzero = false;
        for (const auto& c : dec.coefficients) nonzero = nonzero || !c.is_zero();
        CHECK(nonzero);
        CHECK(rep_to_form(shifted) == rep_to_form(gram));
    }

    // weights do not matter for the verdict
    auto order = BasisOrder::graded_lex(4, 2);
    auto gram = gram_from_sos(cone_quartic<Rat>(Rat(1, 2), {Rat(2), Rat(1), Rat(5), Rat(1, 3)}),
                              order);
    auto rep = uniqueness_pipeline(gram, cone_quartic_null_basis<Rat>(order, Rat(1, 2)));
    CHECK(rep.verdict == UniquenessReport<Rat>::Verdict::UNIQUE);
}

TEST_CASE("uniqueness soundness sampling") {
    // UNIQUE: no random change combination may be psd-and-nonzero on the null space
    Rat g(1, 2);
    auto order = BasisOrder::graded_lex(4, 2);
    auto gram = gram_from_sos(cone_quartic<Rat>(g), order);
    auto rep = run_cone(g);
    REQUIRE(rep.verdict == UniquenessReport<Rat>::Verdict::UNIQUE);
    auto ns = null_space(gram);
    auto cb = change_basis(4, 2, order);
    int m = static_cast<int>(ns.size());
    for (int t = 0; t < 100; ++t) {
        RepMatrix<Rat> delta(order);
        bool nonzero = false;
        for (size_t j = 0; j < cb.size(); ++j) {
            if (rng() % 4) continue;
            Rat c = rand_rat();
            if (c.is_zero()) continue;
            delta = delta + cb.elements[j].materialize<Rat>(order) * c;
            nonzero = true;
        }
        if (!nonzero) continue;
        Matrix<Rat> r(m, m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) r(i, k) = delta.quad(ns[i], ns[k]);
        if (r.is_zero()) continue;
        CHECK(!psd_check_exact(r).accepted);
        CHECK(!psd_check_exact(r * Rat(-1)).accepted);
    }
}

TEST_CASE("uniqueness pipeline on the sextic family") {
    auto u1 = run_frho(Rat(-1));
    CHECK(u1.verdict == UniquenessReport<Rat>::Verdict::UNIQUE);
    auto u2 = run_frho(Rat(1, 5));
    CHECK(u2.verdict == UniquenessReport<Rat>::Verdict::UNIQUE);

    auto v = run_frho(Rat(1));
    REQUIRE(v.verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE);
    CHECK(v.witness_pd_on_null);

    CHECK(run_frho(Rat(-2)).verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE);
    CHECK(run_frho(Rat(-3, 5)).verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE);
    CHECK(run_frho(Rat(1, 2)).verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE);
}

TEST_CASE("perturbation certificates") {
    for (Rat b : {Rat(1), Rat(-1), Rat(1, 7)}) {
        Matrix<Rat> a(3, 3), bb(3, 3);
        a(0, 0) = Rat(1);
        bb(0, 1) = b;
        bb(1, 0) = b;
        bb(2, 2) = Rat(1);
        auto rep = perturb_check(a, bb);
        REQUIRE(rep.verdict == PerturbationReport::Verdict::NEVER_PSD);
        Rat quad(0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                quad += rep.kernel_violation[i] * bb(i, j) * rep.kernel_violation[j];
        CHECK(quad.is_zero());
        bool img_nonzero = false;
        for (const auto& v : rep.b_z1) img_nonzero = img_nonzero || !v.is_zero();
        CHECK(img_nonzero);
    }

    Matrix<Rat> a0(3, 3);
    a0(0, 0) = Rat(1);
    auto rep0 = perturb_check(a0, Matrix<Rat>(3, 3));
    CHECK(rep0.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS);

    // tensor example: Gram of (x^2+y^2)^2 + z^4 + y^2 z^2 + x^2 z^2 with the change
    // E002 x_s E110 - E011 x_s E101; the kernel violation is E110, mapped to E002/2
    auto order = BasisOrder::graded_lex(3, 2);
    RepMatrix<Rat> ga(order);
    ga.add_sym({2, 0, 0}, {2, 0, 0}, Rat(1, 2));
    ga.add_sym({0, 2, 0}, {0, 2, 0}, Rat(1, 2));
    ga.add_sym({2, 0, 0}, {0, 2, 0}, Rat(1));
    ga.add_sym({0, 0, 2}, {0, 0, 2}, Rat(1, 2));
    ga.add_sym({0, 1, 1}, {0, 1, 1}, Rat(1, 2));
    ga.add_sym({1, 0, 1}, {1, 0, 1}, Rat(1, 2));
    CHECK(rep_to_form(ga) ==
          parse_form<Rat>("(x^2+y^2)^2 + z^4 + y^2*z^2 + x^2*z^2", {"x", "y", "z"}));
    RepMatrix<Rat> delta(order);
    delta.add_sym({0, 0, 2}, {1, 1, 0}, Rat(1));
    delta.add_sym({0, 1, 1}, {1, 0, 1}, Rat(-1));
    CHECK(rep_to_form(delta).is_zero());
    auto repd = perturb_check(ga.entries, delta.entries);
    REQUIRE(repd.verdict == PerturbationReport::Verdict::NEVER_PSD);
    SymCoords<Rat> zt(order);
    for (size_t i = 0; i < order->size(); ++i)
        zt.coords[i] = repd.kernel_violation[i] / order->self_inner(int(i));
    REQUIRE(!zt.at({1, 1, 0}).is_zero());
    Rat scale = zt.at({1, 1, 0});
    SymCoords<Rat> e110(order);
    e110[{1, 1, 0}] = scale;
    CHECK(zt == e110);
    SymCoords<Rat> unit(order);
    unit[{1, 1, 0}] = Rat(1);
    auto img = delta.apply(unit);
    SymCoords<Rat> expect(order);
    expect[{0, 0, 2}] = Rat(1, 2);
    CHECK(img == expect);

    // agreement with brute force on random instances; odd rounds build a
    // rank-two coupling u w^T + w u^T with u in Null(A) and w in Range(A),
    // which is psd-on-null with a guaranteed kernel violation
    int accepted = 0, refused = 0;
    for (int t = 0; t < 40; ++t) {
        Matrix<Rat> mrect(3, 5);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 5; ++j) mrect(i, j) = rand_rat();
        Matrix<Rat> a = mrect.transpose() * mrect;
        auto nullb = kernel_basis(a);
        size_t m = nullb.size();
        if (m == 0) continue;
        Matrix<Rat> bfinal(5, 5);
        if (t % 2 == 1) {
            const auto& u = nullb[0];
            std::vector<Rat> seed(5);
            for (auto& v : seed) v = rand_rat();
            std::vector<Rat> w = a.apply(seed); // in Range(A), orthogonal to Null(A)
            bool wzero = true;
            for (const auto& v : w) wzero = wzero && v.is_zero();
            if (wzero) continue;
            for (size_t i = 0; i < 5; ++i)
                for (size_t j = 0; j < 5; ++j) bfinal(i, j) = u[i] * w[j] + w[i] * u[j];
        } else {
            Matrix<Rat> b(5, 5);
            for (size_t i = 0; i < 5; ++i)
                for (size_t j = i; j < 5; ++j) {
                    b(i, j) = rand_rat();
                    b(j, i) = b(i, j);
                }
            Matrix<Rat> corr(5, 5);
            for (const auto& nk : nullb)
                for (size_t i = 0; i < 5; ++i)
                    for (size_t j = 0; j < 5; ++j) corr(i, j) += nk[i] * nk[j];
            Rat t1(1);
            for (int it = 0; it < 64; ++it) {
                Matrix<Rat> cand = b + corr * t1;
                Matrix<Rat> r(m, m);
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < m; ++j) {
                        Rat s(0);
                        for (size_t u = 0; u < 5; ++u)
                            for (size_t v = 0; v < 5; ++v)
                                s += nullb[i][u] * cand(u, v) * nullb[j][v];
                        r(i, j) = s;
                    }
                if (psd_check_exact(r).accepted) break;
                t1 = t1 * Rat(2);
            }
            bfinal = b + corr * t1;
        }
        PerturbationReport rep = perturb_check(a, bfinal);
        bool brute_all_small_psd = true;
        Rat eps(1, 2);
        bool seen_psd = false;
        for (int k = 1; k <= 20; ++k) {
            bool ok = psd_check_exact(a + bfinal * eps).accepted;
            if (ok) seen_psd = true;
            if (seen_psd && !ok) brute_all_small_psd = false;
            eps = eps / Rat(2);
        }
        if (rep.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS) {
            ++accepted;
            CHECK(seen_psd);
            CHECK(brute_all_small_psd);
            auto nsum = null_of_sum(a, bfinal, rep.epsilon);
            for (const auto& z : nsum) {
                auto az = a.apply(z);
                bool zero = true;
                for (const auto& v : az) zero = zero && v.is_zero();
                CHECK(zero);
            }
        } else {
            ++refused;
            CHECK(!seen_psd);
        }
    }
    CHECK(accepted > 0);
    CHECK(refused > 0);
}

TEST_CASE("witness verification") {
    auto e = noncoercive_quartic<Rat>(Rat(1, 5));
    auto res = witness_verify(e, parse_gauss_point("1,i,0,0,0,0"));
    CHECK(res.all_vanish);

    auto s = noncoercive_sextic<Rat>();
    auto res2 = witness_verify(s, parse_gauss_point("1,i,0,0"));
    CHECK(res2.all_vanish);

    SosExpression<Rat> pair;
    pair.weights = {Rat(1), Rat(1)};
    pair.squares = {parse_form<Rat>("x1", {"x1", "x2"}), parse_form<Rat>("x2", {"x1", "x2"})};
    auto res3 = witness_verify(pair, parse_gauss_point("1,i"));
    CHECK(!res3.all_vanish);
    CHECK(res3.failing_index == 0);

    CHECK_THROWS(witness_verify(pair, parse_gauss_point("0,0")));
}

TEST_CASE("forced change elements at complex witnesses") {
    auto cb6 = change_basis(6, 2);
    auto forced = forced_delta_analysis(cb6, parse_gauss_point("1,i,0,0,0,0"));
    REQUIRE(forced.size() == 1);
    RepMatrix<Rat> delta1(cb6.order);
    delta1.add_sym({1, 1, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, Rat(1, 2));
    delta1.add_sym({2, 0, 0, 0, 0, 0}, {0, 2, 0, 0, 0, 0}, Rat(-1, 2));
    CHECK(forced[0].element == delta1);
    CHECK(forced[0].rr == Rat(1));
    CHECK(forced[0].qq == Rat(1));
    CHECK(forced[0].rq == Rat(0));

    for (int n = 2; n <= 5; ++n) {
        auto cb = change_basis(n, 2);
        std::string pt = "1,i";
        for (int k = 2; k < n; ++k) pt += ",0";
        auto f = forced_delta_analysis(cb, parse_gauss_point(pt));
        CHECK(f.size() == 1);
    }

    auto cb43 = change_basis(4, 3);
    auto forced3 = forced_delta_analysis(cb43, parse_gauss_point("1,i,0,0"));
    REQUIRE(forced3.size() == 2);
    RepMatrix<Rat> d1(cb43.order), d2(cb43.order);
    d1.add_sym({1, 2, 0, 0}, {1, 2, 0, 0}, Rat(1, 2));
    d1.add_sym({2, 1, 0, 0}, {0, 3, 0, 0}, Rat(-1, 2));
    d2.add_sym({2, 1, 0, 0}, {2, 1, 0, 0}, Rat(1, 2));
    d2.add_sym({1, 2, 0, 0}, {3, 0, 0, 0}, Rat(-1, 2));
    bool has1 = forced3[0].element == d1 || forced3[1].element == d1;
    bool has2 = forced3[0].element == d2 || forced3[1].element == d2;
    CHECK(has1);
    CHECK(has2);

    auto cb2 = change_basis(3, 2);
    CHECK(forced_delta_analysis(cb2, parse_gauss_point("1,2,-3")).empty());
}

TEST_CASE("coercivity from full-rank matrices") {
    auto order = BasisOrder::graded_lex(2, 2);
    Matrix<Rat> m(3, 3);
    m(0, 0) = Rat(1);
    m(1, 1) = Rat(2);
    m(2, 2) = Rat(1);
    RepMatrix<Rat> g(order, m);
    CHECK(rep_to_form(g) == parse_form<Rat>("x1^4 + 2*x1^2*x2^2 + x2^4", {"x1", "x2"}));
    auto cert = coercive_from_pd_gram(g);
    REQUIRE(cert.ok);
    REQUIRE(cert.squares.squares.size() == 3);
    CHECK(sos_expand(cert.squares) == rep_to_form(g));

    auto sa = s_a_matrix<Rat>(Rat(0));
    CHECK(!coercive_from_pd_gram(sa).ok);

    auto rep = run_cone(Rat(-1));
    REQUIRE(rep.verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE);
    auto o = BasisOrder::graded_lex(4, 2);
    auto gr = gram_from_sos(cone_quartic<Rat>(Rat(-1)), o);
    auto moved = gr + *rep.witness_delta * rep.epsilon;
    auto cert2 = coercive_from_pd_gram(moved);
    CHECK(cert2.ok);
    CHECK(sos_expand(cert2.squares) == rep_to_form(gr));
}

TEST_CASE("obstruction replay: the quartic script") {
    auto replay = ObstructionReplay(quartic_script());
    auto names = quartic_script().params;
    auto det345 = replay.minor_det({3, 4, 5}, {});
    ParamPoly l = parse_poly<Rat>("b - a*gamma", names);
    CHECK(det345 == -(l * l));
    auto det245 = replay.minor_det({2, 4, 5}, {});
    ParamPoly l2 = parse_poly<Rat>("e - d*gamma", names);
    CHECK(det245 == -(l2 * l2));

    auto result = replay.run();
    for (const auto& pre : result.preconditions) {
        INFO(pre.title, ": ", pre.detail);
        CHECK(pre.ok);
    }
    REQUIRE(result.status == ReplayResult::Status::NONCOERCIVE_CONFIRMED);
    bool saw_c = false;
    for (const auto& [k, v] : result.forced_values)
        if (k == "c") {
            saw_c = true;
            CHECK(v == "delta");
        }
    CHECK(saw_c);
}

TEST_CASE("obstruction replay: the sextic script") {
    auto replay = ObstructionReplay(sextic_script());
    auto result = replay.run();
    for (const auto& pre : result.preconditions) {
        INFO(pre.title, ": ", pre.detail);
        CHECK(pre.ok);
    }
    REQUIRE(result.status == ReplayResult::Status::NONCOERCIVE_CONFIRMED);
    std::map<std::string, std::string> forced(result.forced_values.begin(),
                                              result.forced_values.end());
    CHECK(forced["a"] == "delta");
    CHECK(forced["b"] == "delta");
    CHECK(forced["c"] == "0");
    CHECK(forced["d"] == "-2*delta");
}

TEST_CASE("obstruction replay: degenerate parameter value fails honestly") {
    auto script = quartic_script();
    script.specialize["gamma"] = Rat(0);
    // the what-if run drops the range-dependent preconditions
    script.untouchable.clear();
    script.exhausted.clear();
    script.witness_point.clear();
    script.expected_forced.clear();
    script.restricted.clear();
    auto result = ObstructionReplay(script).run();
    REQUIRE(result.status == ReplayResult::Status::STEP_FAILED);
    CHECK(result.failed_step == 3); // the squeeze: -2*a*gamma vanishes at gamma = 0
}

TEST_CASE("obstruction replay: tampered scripts fail the stated identity") {
    auto script = sextic_script();
    script.steps[0].square = "a - 2*delta";
    auto result = ObstructionReplay(script).run();
    REQUIRE(result.status == ReplayResult::Status::STEP_FAILED);
    CHECK(result.failed_step == 1);
}
