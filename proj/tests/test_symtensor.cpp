#include <doctest.h>

#include "soscert/form_parse.hpp"
#include "soscert/multiindex.hpp"
#include "soscert/symtensor.hpp"

#include <random>

using namespace soscert;

namespace {
std::mt19937_64 rng(777);
Rat rand_rat() {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    return Rat(num(rng), den(rng));
}
} // namespace

TEST_CASE("symmetric space dimensions") {
    CHECK(dim_sym(5, 1) == 5);
    CHECK(dim_sym(3, 3) == 10);
    CHECK(dim_sym(4, 2) == 10);
    CHECK(dim_sym(6, 2) == 21);
    CHECK_THROWS(dim_sym(0, 2));
}

TEST_CASE("basis enumeration") {
    auto b = BasisOrder::graded_lex(2, 2);
    REQUIRE(b->size() == 3);
    CHECK(b->at(0) == MultiIndex{2, 0});
    CHECK(b->at(1) == MultiIndex{1, 1});
    CHECK(b->at(2) == MultiIndex{0, 2});

    // the quartic example layout: w2, x2, y2, z2, wx, yz, wy, zx, wz, xy
    std::vector<MultiIndex> quartic_order = {
        {2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}, {1, 1, 0, 0},
        {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}};
    auto e = BasisOrder::explicit_order(4, 2, quartic_order);
    CHECK(e->index_of(MultiIndex{0, 0, 1, 1}) == 5);

    auto dup = quartic_order;
    dup[3] = dup[0];
    CHECK_THROWS(BasisOrder::explicit_order(4, 2, dup));
    auto wrong = quartic_order;
    wrong[0] = MultiIndex{3, 0, 0, 0};
    CHECK_THROWS(BasisOrder::explicit_order(4, 2, wrong));

    CHECK(BasisOrder::graded_lex(6, 2)->size() == 21);
}

TEST_CASE("basis inner products") {
    CHECK(basis_inner({3, 0, 0}, {3, 0, 0}, 3) == Rat(1));
    CHECK(basis_inner({1, 2, 0}, {1, 2, 0}, 3) == Rat(1, 3));
    CHECK(basis_inner({1, 1, 1}, {1, 1, 1}, 3) == Rat(1, 6));
    CHECK(basis_inner({2, 0, 0}, {1, 1, 0}, 2) == Rat(0));
    CHECK_THROWS(basis_inner({2, 0}, {1, 0}, 2));
}

TEST_CASE("rank-one coordinates") {
    auto b2 = BasisOrder::graded_lex(3, 2);
    std::vector<Rat> e1{Rat(1), Rat(0), Rat(0)};
    auto t = rankone_coords<Rat>(e1, b2);
    for (size_t i = 0; i < b2->size(); ++i)
        CHECK(t.coords[i] == (b2->at(int(i)) == MultiIndex{2, 0, 0} ? Rat(1) : Rat(0)));

    auto b3 = BasisOrder::graded_lex(3, 3);
    std::vector<Rat> ones{Rat(1), Rat(1), Rat(1)};
    auto u = rankone_coords<Rat>(ones, b3);
    CHECK(u.at({1, 1, 1}) == Rat(6));
    CHECK(u.at({2, 1, 0}) == Rat(3));
    CHECK(u.at({0, 1, 2}) == Rat(3));
    CHECK(u.at({3, 0, 0}) == Rat(1));

    // E_alpha . x^p = x^alpha for random rational points
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rat> x{rand_rat(), rand_rat(), rand_rat()};
        auto r = rankone_coords<Rat>(x, b3);
        for (size_t i = 0; i < b3->size(); ++i) {
            SymCoords<Rat> unit(b3);
            unit.coords[i] = Rat(1);
            Rat expect(1);
            for (int v = 0; v < 3; ++v)
                for (int k = 0; k < b3->at(int(i))[v]; ++k) expect *= x[v];
            CHECK(unit.inner(r) == expect);
        }
    }

    // scaling by c multiplies coordinates by c^p
    std::vector<Rat> x{Rat(2, 3), Rat(-1, 2), Rat(5)};
    Rat c(-3, 7);
    std::vector<Rat> cx{x[0] * c, x[1] * c, x[2] * c};
    auto rx = rankone_coords<Rat>(x, b3);
    auto rcx = rankone_coords<Rat>(cx, b3);
    CHECK(rcx == rx * (c * c * c));
}

TEST_CASE("complex rank-one splits") {
    auto b6 = BasisOrder::graded_lex(6, 2);
    auto z = parse_gauss_point("1,i,0,0,0,0");
    auto [re, im] = complex_rankone_parts(z, b6);
    for (size_t i = 0; i < b6->size(); ++i) {
        const MultiIndex& a = b6->at(int(i));
        Rat er = a == MultiIndex{2, 0, 0, 0, 0, 0}   ? Rat(1)
                 : a == MultiIndex{0, 2, 0, 0, 0, 0} ? Rat(-1)
                                                     : Rat(0);
        Rat ei = a == MultiIndex{1, 1, 0, 0, 0, 0} ? Rat(2) : Rat(0);
        CHECK(re.coords[i] == er);
        CHECK(im.coords[i] == ei);
    }

    // real points have vanishing imaginary part
    auto zr = parse_gauss_point("2,-1/2,3,0,0,1");
    auto [re2, im2] = complex_rankone_parts(zr, b6);
    CHECK(im2.is_zero());
    std::vector<Rat> xr;
    for (const auto& g : zr) xr.push_back(g.re());
    CHECK(re2 == rankone_coords<Rat>(xr, b6));

    // cubic case against the direct binomial expansion z^3 = sum C(3,m) i^m E_(3-m,m)
    auto b23 = BasisOrder::graded_lex(2, 3);
    auto z2 = parse_gauss_point("1,i");
    auto [re3, im3] = complex_rankone_parts(z2, b23);
    CHECK(re3.at({3, 0}) == Rat(1));
    CHECK(re3.at({1, 2}) == Rat(-3));
    CHECK(re3.at({2, 1}) == Rat(0));
    CHECK(re3.at({0, 3}) == Rat(0));
    CHECK(im3.at({2, 1}) == Rat(3));
    CHECK(im3.at({0, 3}) == Rat(-1));
    CHECK(im3.at({3, 0}) == Rat(0));
}

TEST_CASE("tensor evaluation at complex points") {
    auto z = parse_gauss_point("1,i,0,0,0,0");
    CHECK(tensor_eval({2, 0, 0, 0, 0, 0}, z) == GaussRat(Rat(1)));
    CHECK(tensor_eval({1, 1, 0, 0, 0, 0}, z) == GaussRat::i());
    CHECK(tensor_eval({0, 2, 0, 0, 0, 0}, z) == GaussRat(Rat(-1)));
}

TEST_CASE("raw tensor coordinates of the orthogonal basis") {
    // Coordinates of E_alpha as a rank-p tensor are 0 or alpha!/p! and sum
    // to 1; brute-force over index tuples for small n, p.
    for (int n = 2; n <= 3; ++n)
        for (int p = 2; p <= 3; ++p) {
            auto order = BasisOrder::graded_lex(n, p);
            for (size_t bi = 0; bi < order->size(); ++bi) {
                const MultiIndex& a = order->at(int(bi));
                Rat weight(mi_factorial(a), factorial(p));
                Rat sum(0);
                std::vector<int> tuple(p, 0);
                while (true) {
                    MultiIndex counts(n, 0);
                    for (int t : tuple) counts[t]++;
                    Rat coord = (counts == a) ? weight : Rat(0);
                    CHECK((coord.is_zero() || coord == weight));
                    sum += coord;
                    int pos = 0;
                    while (pos < p && ++tuple[pos] == n) tuple[pos++] = 0;
                    if (pos == p) break;
                }
                CHECK(sum == Rat(1));
            }
        }
}
