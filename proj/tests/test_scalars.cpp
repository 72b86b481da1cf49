#include <doctest.h>

#include "soscert/algnum.hpp"
#include "soscert/gaussrat.hpp"
#include "soscert/rational.hpp"
#include "soscert/ratfunc.hpp"
#include "soscert/scalar.hpp"
#include "soscert/upoly.hpp"

#include <random>

using namespace soscert;

namespace {

std::mt19937_64 rng(20240811);

Rat rand_rat(long mag = 20) {
    std::uniform_int_distribution<long> num(-mag, mag), den(1, mag);
    return Rat(num(rng), den(rng));
}

UniPoly poly(std::initializer_list<long> coeffs_low_first) {
    std::vector<Rat> v;
    for (long c : coeffs_low_first) v.push_back(Rat(c));
    return UniPoly(v);
}

// X^3 - X/2 + 1/9
UniPoly eta_cubic() {
    return UniPoly({Rat(1, 9), Rat(-1, 2), Rat(0), Rat(1)});
}

} // namespace

TEST_CASE("rationals are canonical") {
    Rat a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(Rat::parse("-13/50") == Rat(-13, 50));
    CHECK(Rat::parse("7") == Rat(7));
    CHECK_THROWS(Rat::parse("1/0"));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK(Rat(2, 3).inv() == Rat(3, 2));
}

TEST_CASE("polynomial division and gcd") {
    UniPoly p = poly({-1, 0, 1}); // t^2 - 1
    UniPoly d = poly({-1, 1});    // t - 1
    auto [q, r] = p.divmod(d);
    CHECK(r.is_zero());
    CHECK(q == poly({1, 1}));
    CHECK(gcd(p, d) == d.monic());
    auto [g, u, v] = ext_gcd(poly({0, 0, 1}), poly({2, 1}));
    CHECK(g == UniPoly::one());
    CHECK((u * poly({0, 0, 1}) + v * poly({2, 1})) == UniPoly::one());
}

TEST_CASE("rational function normalization") {
    // common factor cancels, denominator monic
    RatFunc a = ratfunc_normalize(poly({-1, 0, 1}), poly({-1, 1}));
    CHECK(a.num() == poly({1, 1}));
    CHECK(a.den() == UniPoly::one());

    RatFunc z = ratfunc_normalize(UniPoly::zero(), poly({2, 0, 0, 1}));
    CHECK(z.is_zero());
    CHECK(z.den() == UniPoly::one());

    // (1 - 16 t^3) / (t (1 - 4 t^3)): already coprime (gcd oracle confirms)
    UniPoly n = poly({1, 0, 0, -16});
    UniPoly d = UniPoly::var() * poly({1, 0, 0, -4});
    CHECK(gcd(n, d) == UniPoly::one());
    RatFunc f = ratfunc_normalize(n, d);
    CHECK(f.den().is_monic());
    CHECK(f.num() * d == n * f.den()); // same function, up to monic scaling
    CHECK(f.num().degree() == n.degree());
    CHECK(f.den().degree() == d.degree());

    CHECK_THROWS(ratfunc_normalize(poly({1}), UniPoly::zero()));
}

TEST_CASE("real root isolation") {
    CHECK_THROWS(isolate_real_roots(UniPoly::zero()));

    auto none = isolate_real_roots(poly({1, 0, 1})); // t^2 + 1
    CHECK(none.empty());

    auto two = isolate_real_roots(poly({-2, 0, 1})); // t^2 - 2
    REQUIRE(two.size() == 2);
    auto left = refine_interval(poly({-2, 0, 1}), two[0], Rat(1, 64));
    auto right = refine_interval(poly({-2, 0, 1}), two[1], Rat(1, 64));
    CHECK(left.lo > Rat(-3, 2));
    CHECK(left.hi < Rat(-1));
    CHECK(right.lo > Rat(1));
    CHECK(right.hi < Rat(3, 2));

    UniPoly c = eta_cubic();
    auto roots = isolate_real_roots(c);
    REQUIRE(roots.size() == 3);
    // independent sign-change count on a fixed sample grid
    std::vector<Rat> grid{Rat(-2), Rat(-1), Rat(0), Rat(1, 4), Rat(13, 50), Rat(1, 2), Rat(1)};
    int changes = 0, prev = 0;
    for (const auto& x : grid) {
        int s = c.eval(x).sign();
        if (s != 0 && prev != 0 && s != prev) ++changes;
        if (s != 0) prev = s;
    }
    CHECK(changes == 3);
    // the smallest positive root isolates into (1/4, 13/50)
    CHECK(c.eval(Rat(1, 4)).sign() > 0);
    CHECK(c.eval(Rat(13, 50)).sign() < 0);
    auto seq = sturm_sequence(c);
    CHECK(sturm_count(seq, Rat(1, 4), Rat(13, 50)) == 1);
    // every isolating interval reports a Sturm count of exactly one
    for (const auto& iv : roots) CHECK(sturm_count(seq, iv.lo, iv.hi) == 1);
}

TEST_CASE("algebraic number signs") {
    auto ctx = AlgNum::make_ctx(eta_cubic(), Rat(1, 4), Rat(13, 50));
    AlgNum s = AlgNum::generator(ctx);

    CHECK(algnum_sign(AlgNum(ctx, UniPoly::zero())) == Sign::zero);
    // sqrt(eta_0) < 1/3
    CHECK(algnum_sign(s - AlgNum(Rat(1, 3))) == Sign::negative);
    // gamma_0 = 27 s^3 in (0, 1)
    AlgNum gamma0 = AlgNum(Rat(27)) * s * s * s;
    CHECK(algnum_sign(gamma0 - AlgNum(Rat(1))) == Sign::negative);
    CHECK(algnum_sign(gamma0) == Sign::positive);

    // zero detection through the modulus: s^3 - s/2 + 1/9 == 0
    AlgNum rel = s * s * s - s * AlgNum(Rat(1, 2)) + AlgNum(Rat(1, 9));
    CHECK(algnum_sign(rel) == Sign::zero);
    CHECK(rel == AlgNum(Rat(0)));
}

TEST_CASE("field axioms on random samples") {
    auto ctx = AlgNum::make_ctx(poly({-5, 0, 1}), Rat(2), Rat(9, 4)); // sqrt(5)
    for (int i = 0; i < 40; ++i) {
        Rat qa = rand_rat(), qb = rand_rat(), qc = rand_rat();
        CHECK((qa + qb) + qc == qa + (qb + qc));
        CHECK(qa * (qb + qc) == qa * qb + qa * qc);
        if (!qa.is_zero()) CHECK(qa * qa.inv() == Rat(1));

        RatFunc fa(poly({0, 1}) * qa + poly({1}) * qb, poly({1, 1}));
        RatFunc fb(poly({0, 0, 1}) * qc + poly({2}), poly({3, 0, 1}));
        RatFunc fc = RatFunc(qc) + RatFunc::var();
        CHECK((fa + fb) + fc == fa + (fb + fc));
        CHECK(fa * (fb + fc) == fa * fb + fa * fc);
        if (!fa.is_zero()) CHECK(fa * fa.inv() == RatFunc(Rat(1)));

        AlgNum aa = AlgNum::generator(ctx) * qa + AlgNum(qb);
        AlgNum ab = AlgNum::generator(ctx) * qc + AlgNum(qa);
        AlgNum ac = AlgNum(ctx, poly({0, 0, 1})) * qb; // qb * s^2 = 5 qb
        CHECK((aa + ab) + ac == aa + (ab + ac));
        CHECK(aa * (ab + ac) == aa * ab + aa * ac);
        if (!aa.is_zero()) CHECK(aa * aa.inv() == AlgNum(Rat(1)));

        GaussRat ga(qa, qb), gb(qc, qa), gc(qb, qc);
        CHECK((ga + gb) + gc == ga + (gb + gc));
        CHECK(ga * (gb + gc) == ga * gb + ga * gc);
        if (!ga.is_zero()) CHECK(ga * ga.inv() == GaussRat(Rat(1)));
    }
}

TEST_CASE("algebraic zero test matches gcd criterion") {
    auto ctx = AlgNum::make_ctx(poly({-3, 0, 1}), Rat(1), Rat(2)); // sqrt(3)
    AlgNum s = AlgNum::generator(ctx);
    AlgNum v = s * s - AlgNum(Rat(3)); // residue reduces to 0 mod the modulus
    CHECK(algnum_sign(v) == Sign::zero);
    // (s - 3)(s + 3) has nonzero gcd with no root in the interval
    AlgNum w = s - AlgNum(Rat(3));
    CHECK(algnum_sign(w) == Sign::negative);
}

TEST_CASE("interval sign certificates for rational functions") {
    RatFunc g = RatFunc::var();
    RatFunc one_minus(poly({1, -1}));
    CHECK(exact_sign(g / one_minus) == 1);
    CHECK(exact_sign(-(g / one_minus)) == -1);
    CHECK(exact_sign(RatFunc(Rat(0))) == 0);
    CHECK_THROWS_AS((void)exact_sign(RatFunc(poly({-1, 2}))), SignUndecided); // 2t-1 changes sign
}

TEST_CASE("gaussian rationals") {
    GaussRat i = GaussRat::i();
    CHECK((i * i) == GaussRat(Rat(-1)));
    GaussRat z(Rat(3, 2), Rat(-2));
    CHECK(z * z.inv() == GaussRat(Rat(1)));
    CHECK(z.conj().im() == Rat(2));
}
