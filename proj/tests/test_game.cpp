#include <doctest.h>

#include "soscert/game.hpp"
#include "soscert/json_io.hpp"
#include "soscert/repmatrix.hpp"
#include "soscert/uniqueness.hpp"

using namespace soscert;

TEST_CASE("board validation") {
    CHECK_NOTHROW(game_board_n4());

    // [1 2] block must match exactly
    CHECK_THROWS_WITH_AS(GameBoard(2, {"a", "b", "c"}, {{"b+c", "a"}, {"a", "b+c"}}),
                         doctest::Contains("[1 2] block"), std::invalid_argument);
    // a, b banned outside
    CHECK_THROWS_WITH_AS(GameBoard(3, {"a", "b", "c"},
                                   {{"b+c", "a", "a"}, {"a", "-b+c", "0"}, {"a", "0", "c"}}),
                         doctest::Contains("outside"), std::invalid_argument);
    // c must occur outside
    CHECK_THROWS_WITH_AS(GameBoard(3, {"a", "b", "c", "g"},
                                   {{"b+c", "a", "0"}, {"a", "-b+c", "0"}, {"0", "0", "g"}}),
                         doctest::Contains("c must appear"), std::invalid_argument);
    // a reachable rank-one matrix is a construction error
    CHECK_THROWS_WITH_AS(GameBoard(3, {"a", "b", "c", "g"},
                                   {{"b+c", "a", "c"}, {"a", "-b+c", "0"}, {"c", "0", "g"}}),
                         doctest::Contains("rank-1"), std::invalid_argument);
}

TEST_CASE("minors span the change quadratics on the board parametrization") {
    auto board = game_board_n4();
    auto minors = board.admissible_minors();
    CHECK(minors.size() == 20); // 21 distinct 2x2 minors of a symmetric 4x4, less det[1 2]

    // the board is a parametrization of a 6-dim subspace of S^2(R^4);
    // change quadratics there coincide with the span of all 2x2 minors
    auto order = BasisOrder::graded_lex(4, 2);
    auto cb = change_basis(4, 2, order);
    int nv = board.var_count();
    // t(vars) as tensor coordinates: t_ii on E_2ei, 2 t_ij on E_ei+ej
    std::vector<SymCoords<ParamPoly>> basis_vecs;
    for (int v = 0; v < nv; ++v) {
        SymCoords<ParamPoly> t(order);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                ParamPoly entry = board.entries()(i, j);
                // coefficient of variable v in the (linear) entry
                std::vector<int> e(nv, 0);
                e[v] = 1;
                Rat c = entry.coeff(e);
                if (c.is_zero()) continue;
                MultiIndex a(4, 0);
                a[i] += 1;
                a[j] += 1;
                ParamPoly add = ParamPoly(nv, i == j ? c : c + c);
                t.coords[order->index_of(a)] = t.coords[order->index_of(a)] + add;
            }
        basis_vecs.push_back(t);
    }
    // quadratics Delta . tt in the board variables, as rows
    int cols = quad_monomial_count(nv);
    std::vector<std::vector<Rat>> change_rows;
    for (const auto& el : cb.elements) {
        auto dm = el.materialize<ParamPoly>(order);
        ParamPoly q(nv);
        // t = sum over var-direction tensors (vars carried inside ParamPoly)
        SymCoords<ParamPoly> t(order);
        for (int v = 0; v < nv; ++v)
            for (size_t i = 0; i < order->size(); ++i)
                t.coords[i] = t.coords[i] + basis_vecs[v].coords[i] * ParamPoly::variable(nv, v, Rat(1));
        q = dm.quad(t, t);
        std::vector<Rat> row(cols, Rat(0));
        for (const auto& [e, c] : q.terms()) {
            int i = -1, j = -1;
            for (int v = 0; v < nv; ++v) {
                if (e[v] == 2) { i = j = v; break; }
                if (e[v] == 1) { (i < 0 ? i : j) = v; }
            }
            row[i == j ? quad_col_square(nv, i) : quad_col_cross(nv, i, j)] = c;
        }
        change_rows.push_back(std::move(row));
    }
    std::vector<std::vector<Rat>> minor_rows;
    for (const auto& id : minors) {
        ParamPoly q = board.minor_poly(id);
        std::vector<Rat> row(cols, Rat(0));
        for (const auto& [e, c] : q.terms()) {
            int i = -1, j = -1;
            for (int v = 0; v < nv; ++v) {
                if (e[v] == 2) { i = j = v; break; }
                if (e[v] == 1) { (i < 0 ? i : j) = v; }
            }
            row[i == j ? quad_col_square(nv, i) : quad_col_cross(nv, i, j)] = c;
        }
        minor_rows.push_back(std::move(row));
    }
    // det[1 2] completes the span: add it to the minor side
    {
        ParamPoly q = board.entries()(0, 0) * board.entries()(1, 1) -
                      board.entries()(0, 1) * board.entries()(0, 1);
        std::vector<Rat> row(cols, Rat(0));
        for (const auto& [e, c] : q.terms()) {
            int i = -1, j = -1;
            for (int v = 0; v < nv; ++v) {
                if (e[v] == 2) { i = j = v; break; }
                if (e[v] == 1) { (i < 0 ? i : j) = v; }
            }
            row[i == j ? quad_col_square(nv, i) : quad_col_cross(nv, i, j)] = c;
        }
        minor_rows.push_back(std::move(row));
    }
    auto [r1, p1] = rref(Matrix<Rat>(change_rows));
    auto [r2, p2] = rref(Matrix<Rat>(minor_rows));
    CHECK(p1.rank == p2.rank);
    CHECK(p1.rank == 19); // restricted to the 6-variable board slice
    for (size_t i = 0; i < p1.rank; ++i)
        for (int c = 0; c < cols; ++c) CHECK(r1(i, c) == r2(i, c));
}

TEST_CASE("minor counts on a generic symmetric matrix") {
    // over a fully generic symmetric 4x4 (10 entry variables), the 21
    // distinct 2x2 minors span 20 dimensions, 19 without det[1 2]
    int nv = 10;
    auto var_of = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        static const int idx[4][4] = {{0, 1, 2, 3}, {1, 4, 5, 6}, {2, 5, 7, 8}, {3, 6, 8, 9}};
        return idx[i][j];
    };
    auto entry = [&](int i, int j) { return ParamPoly::variable(nv, var_of(i, j), Rat(1)); };
    int cols = quad_monomial_count(nv);
    auto poly_row = [&](const ParamPoly& q) {
        std::vector<Rat> row(cols, Rat(0));
        for (const auto& [e, c] : q.terms()) {
            int i = -1, j = -1;
            for (int v = 0; v < nv; ++v) {
                if (e[v] == 2) { i = j = v; break; }
                if (e[v] == 1) { (i < 0 ? i : j) = v; }
            }
            row[i == j ? quad_col_square(nv, i) : quad_col_cross(nv, i, j)] = c;
        }
        return row;
    };
    std::vector<std::vector<Rat>> all_rows, adm_rows;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = k + 1; l < 4; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    ParamPoly q = entry(i, k) * entry(j, l) - entry(i, l) * entry(j, k);
                    all_rows.push_back(poly_row(q));
                    if (!(i == 0 && j == 1 && k == 0 && l == 1)) adm_rows.push_back(poly_row(q));
                }
    CHECK(all_rows.size() == 21);
    CHECK(rref(Matrix<Rat>(all_rows)).second.rank == 20);
    CHECK(rref(Matrix<Rat>(adm_rows)).second.rank == 19);
}

TEST_CASE("game verification") {
    auto board = game_board_n4();

    // the empty combination leaves -c^2 on the table
    auto v0 = game_verify(board, GameCertificate{});
    CHECK(v0.kind == GameVerdict::Kind::NOT_PSD);
    Rat val(0);
    for (int i = 0; i < board.var_count(); ++i)
        for (int j = 0; j < board.var_count(); ++j)
            val += v0.witness[i] * v0.combination(i, j) * v0.witness[j];
    CHECK(val.sign() < 0);

    // the stored combination is pd
    auto cert = game_certificate_n4();
    auto v1 = game_verify(board, cert);
    CHECK(v1.kind == GameVerdict::Kind::PD);

    // the stored data file round-trips and verifies too
    auto loaded = game_certificate_from_json(
        load_json_file(std::string(SOSCERT_DATA_DIR) + "/game/n4_certificate.json"));
    CHECK(game_verify(board, loaded).kind == GameVerdict::Kind::PD);
    auto board2 = game_board_from_json(
        load_json_file(std::string(SOSCERT_DATA_DIR) + "/game/n4_board.json"));
    CHECK(game_verify(board2, loaded).kind == GameVerdict::Kind::PD);

    // det[1 2] may not be used
    GameCertificate illegal;
    illegal.lambda[{{1, 2}, {1, 2}}] = Rat(1);
    CHECK_THROWS_WITH_AS(game_verify(board, illegal), doctest::Contains("not allowed"),
                         std::invalid_argument);
}

TEST_CASE("game search") {
    auto board = game_board_n4();
    CHECK(!game_search(board, 0).has_value());

    auto found = game_search(board);
    REQUIRE(found.has_value());
    CHECK(game_verify(board, *found).kind == GameVerdict::Kind::PD);
}
