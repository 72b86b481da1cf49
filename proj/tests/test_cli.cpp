#include <doctest.h>

#include "soscert/cli.hpp"

#include <fstream>
#include <sstream>

using namespace soscert;

namespace {
int run(std::vector<std::string> args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    int code = dispatch(std::move(args), out, err);
    if (out_text) *out_text = out.str();
    return code;
}
std::string data_path(const std::string& rel) { return std::string(SOSCERT_DATA_DIR) + rel; }
} // namespace

TEST_CASE("dims, basis and changes") {
    std::string text;
    CHECK(run({"dims", "--n", "4", "--p", "2"}, &text) == 0);
    CHECK(text == "10\n");
    CHECK(run({"changes", "--n", "6", "--p", "2", "--count"}, &text) == 0);
    CHECK(text == "105\n");
    CHECK(run({"basis", "--n", "2", "--p", "2"}, &text) == 0);
    CHECK(text == "2,0\n1,1\n0,2\n");
    CHECK(run({"dims", "--n", "4"}) == 3);           // missing flag
    CHECK(run({"dims", "--n", "x", "--p", "2"}) == 3); // malformed
    CHECK(run({"no-such-command"}) == 3);
}

TEST_CASE("witness subcommand and exit codes") {
    std::string forms = "/tmp/soscert_test_quartic.forms";
    {
        std::ofstream f(forms);
        f << "# the five quadratics of the noncoercive quartic at gamma = 1/5\n";
        f << "u^2 + v^2 + v*w\n";
        f << "w^2 - 1/5*x^2 - 1/5*y^2 - 1/5*z^2\n";
        f << "w*x - y*z\nw*y - z*x\nw*z - x*y\n";
    }
    std::string text;
    CHECK(run({"witness", "--forms", forms, "--point", "1,i,0,0,0,0"}, &text) == 0);
    CHECK(text == "ALL_VANISH\n");
    CHECK(run({"witness", "--forms", forms, "--point", "1,0,0,0,0,0"}, &text) == 1);
    CHECK(text.substr(0, 5) == "FAILS");
    CHECK(run({"witness", "--forms", forms, "--point", "0,0,0,0,0,0"}) == 3);
    CHECK(run({"witness", "--forms", "/nonexistent", "--point", "1,i"}) == 3);
}

TEST_CASE("gram, check-psd, nullspace, unique round trip") {
    std::string forms = "/tmp/soscert_test_cone.forms";
    {
        std::ofstream f(forms);
        f << "3*w^2 - 1/2*x^2 - 1/2*y^2 - 1/2*z^2\n";
        f << "w*x - y*z\nw*y - z*x\nw*z - x*y\n";
    }
    std::string matrix = "/tmp/soscert_test_cone.json";
    CHECK(run({"gram", "--forms", forms, "--out", matrix}) == 0);
    std::string text;
    CHECK(run({"check-psd", "--matrix", matrix}, &text) == 0);
    CHECK(text.find("rank 4") != std::string::npos);
    CHECK(run({"nullspace", "--matrix", matrix}, &text) == 0);
    CHECK(text.find("dimension 6") != std::string::npos);
    CHECK(run({"form-of", "--matrix", matrix}, &text) == 0);
    CHECK(text.find("x1^4") != std::string::npos);

    CHECK(run({"unique", "--name", "cone-quartic", "--gamma", "1/2"}, &text) == 0);
    CHECK(text.find("UNIQUE") != std::string::npos);
    CHECK(run({"unique", "--name", "cone-quartic", "--gamma", "2"}, &text) == 1);
    CHECK(text.find("NON_UNIQUE") != std::string::npos);
    CHECK(run({"unique", "--name", "f-rho", "--rho", "-1"}) == 0);
    CHECK(run({"unique", "--name", "no-such"}) == 3);
}

TEST_CASE("obstruct and game subcommands") {
    std::string text;
    CHECK(run({"obstruct", "--script", data_path("/scripts/noncoercive_quartic.json")}, &text) == 0);
    CHECK(text.find("NONCOERCIVE_CONFIRMED") != std::string::npos);
    CHECK(run({"obstruct", "--script", data_path("/scripts/noncoercive_sextic.json")}, &text) == 0);
    CHECK(text.find("d = -2*delta") != std::string::npos);

    CHECK(run({"game", "--board", data_path("/game/n4_board.json"), "--certificate",
               data_path("/game/n4_certificate.json")},
              &text) == 0);
    CHECK(text == "PD\n");
    CHECK(run({"game", "--board", data_path("/game/n4_board.json")}) == 3);
}

TEST_CASE("reproduce is deterministic") {
    std::string a, b;
    CHECK(run({"reproduce", "eta0-cubic", "--json"}, &a) == 0);
    CHECK(run({"reproduce", "eta0-cubic", "--json"}, &b) == 0);
    CHECK(a == b);
    CHECK(!a.empty());
    CHECK(run({"reproduce", "no-such-case"}) == 3);

    CHECK(run({"reproduce", "s-eta0-relation", "--json"}, &a) == 0);
    CHECK(run({"reproduce", "matrixprop-example"}, &a) == 0);
}
