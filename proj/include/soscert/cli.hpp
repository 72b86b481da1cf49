#pragma once

/*
 * Command-line surface.  Exit codes: 0 certified/affirmed, 1 refuted,
 * 2 inconclusive, 3 input error.
 */

#include "soscert/json_io.hpp"
#include "soscert/reproduce.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace soscert {

namespace cli_detail {

inline constexpr int EXIT_OK = 0, EXIT_REFUTED = 1, EXIT_INCONCLUSIVE = 2, EXIT_BADINPUT = 3;

// forms file: one form per line, '#' comments, variables shared per file
inline std::pair<SosExpression<Rat>, std::vector<std::string>>
load_forms_file(const std::string& path, const std::string& weights_csv = "") {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open forms file '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    std::string joined;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
        if (blank) continue;
        lines.push_back(line);
        joined += line + " + ";
    }
    if (lines.empty()) throw std::invalid_argument("forms file '" + path + "' is empty");
    // shared variable order: first appearance across the whole file
    auto toks = detail::tokenize(joined + "0");
    auto vars = detail::infer_vars(toks, {});
    SosExpression<Rat> e;
    for (const auto& text : lines) e.squares.push_back(parse_form<Rat>(text, vars));
    if (weights_csv.empty()) {
        e.weights.assign(e.squares.size(), Rat(1));
    } else {
        std::stringstream ss(weights_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) e.weights.push_back(Rat::parse(tok));
        if (e.weights.size() != e.squares.size())
            throw std::invalid_argument("weight count does not match the number of forms");
    }
    e.validate();
    return {e, vars};
}

inline BasisOrderPtr order_from_flag(int n, int p, const std::string& order_flag) {
    if (order_flag.empty()) return BasisOrder::graded_lex(n, p);
    std::vector<MultiIndex> seq;
    std::stringstream ss(order_flag);
    std::string tok;
    while (std::getline(ss, tok, ';')) seq.push_back(mi_parse(tok, n));
    return BasisOrder::explicit_order(n, p, seq);
}

inline void emit(std::ostream& out, const json& j, bool json_mode, const std::string& text) {
    if (json_mode) out << j.dump(2) << "\n";
    else out << text << "\n";
}

} // namespace cli_detail

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"exact certificates for sums of squares: Gram matrices on symmetric "
                 "tensor spaces, change subspaces, uniqueness and noncoercivity replays"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable JSON output");

    int n = 0, p = 0;
    std::string order_flag, matrix_path, matrix_path_b, forms_path, point, weights_csv;
    std::string script_path, board_path, cert_path, case_id, out_path;
    std::string gamma_str = "1/2", rho_str = "-1";
    bool count_only = false, do_search = false, run_all = false;
    long budget = 200;

    auto* dims = app.add_subcommand("dims", "dimension of the degree-p symmetric tensor space");
    dims->add_option("--n", n)->required();
    dims->add_option("--p", p)->required();

    auto* basis = app.add_subcommand("basis", "enumerate the degree-p multi-index basis");
    basis->add_option("--n", n)->required();
    basis->add_option("--p", p)->required();
    basis->add_option("--order", order_flag, "explicit order, entries ';'-separated");

    auto* changes = app.add_subcommand("changes", "basis of the change subspace");
    changes->add_option("--n", n)->required();
    changes->add_option("--p", p)->required();
    changes->add_flag("--count", count_only, "print only the dimension");

    auto* gram = app.add_subcommand("gram", "Gram matrix of a weighted square list");
    gram->add_option("--forms", forms_path)->required();
    gram->add_option("--weights", weights_csv, "comma-separated positive weights");
    gram->add_option("--order", order_flag);
    gram->add_option("--out", out_path, "write the matrix JSON here instead of stdout");

    auto* formof = app.add_subcommand("form-of", "form represented by a matrix");
    formof->add_option("--matrix", matrix_path)->required();

    auto* nullsp = app.add_subcommand("nullspace", "exact null space of a representation matrix");
    nullsp->add_option("--matrix", matrix_path)->required();

    auto* unique = app.add_subcommand("unique", "Gram uniqueness pipeline");
    unique->add_option("--matrix", matrix_path, "matrix JSON file");
    unique->add_option("--name", case_id, "built-in family: cone-quartic or f-rho");
    unique->add_option("--gamma", gamma_str);
    unique->add_option("--rho", rho_str);

    auto* perturb = app.add_subcommand("perturb", "psd perturbation certificate");
    perturb->add_option("--base", matrix_path)->required();
    perturb->add_option("--change", matrix_path_b)->required();

    auto* checkpsd = app.add_subcommand("check-psd", "exact psd certification");
    checkpsd->add_option("--matrix", matrix_path)->required();

    auto* witness = app.add_subcommand("witness", "evaluate squares at a complex point");
    witness->add_option("--forms", forms_path)->required();
    witness->add_option("--point", point)->required();

    auto* obstruct = app.add_subcommand("obstruct", "replay a noncoercivity script");
    obstruct->add_option("--script", script_path)->required();

    auto* game = app.add_subcommand("game", "the minor game: verify or search");
    game->add_option("--board", board_path)->required();
    game->add_option("--certificate", cert_path);
    game->add_flag("--search", do_search);
    game->add_option("--budget", budget);

    auto* reproduce = app.add_subcommand("reproduce", "re-run a named construction end to end");
    reproduce->add_option("case", case_id, "case identifier");
    reproduce->add_flag("--all", run_all);
    reproduce->add_option("--gamma", gamma_str);
    reproduce->add_option("--rho", rho_str);
    reproduce->add_option("--budget", budget);

    for (auto* sc : {dims, basis, changes, gram, formof, nullsp, unique, perturb, checkpsd,
                     witness, obstruct, game, reproduce})
        sc->fallthrough();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return EXIT_OK;
        }
        err << "input error: " << e.what() << "\n";
        return EXIT_BADINPUT;
    }

    try {
        if (*dims) {
            out << dim_sym(n, p) << "\n";
            return EXIT_OK;
        }
        if (*basis) {
            auto order = order_from_flag(n, p, order_flag);
            for (const auto& a : order->sequence()) out << mi_str(a) << "\n";
            return EXIT_OK;
        }
        if (*changes) {
            auto cb = change_basis(n, p);
            if (count_only) {
                out << cb.size() << "\n";
                return EXIT_OK;
            }
            for (const auto& el : cb.elements)
                out << "1/2 ( E[" << mi_str(cb.order->at(el.member.first)) << "] xs E["
                    << mi_str(cb.order->at(el.member.second)) << "] - E["
                    << mi_str(cb.order->at(el.distinguished.first)) << "] xs E["
                    << mi_str(cb.order->at(el.distinguished.second)) << "] )\n";
            return EXIT_OK;
        }
        if (*gram) {
            auto [e, vars] = load_forms_file(forms_path, weights_csv);
            auto order = order_flag.empty()
                             ? BasisOrder::graded_lex(e.n(), e.p())
                             : order_from_flag(e.n(), e.p(), order_flag);
            auto g = gram_from_sos(e, order);
            json j = repmatrix_to_json(g);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << j.dump(2) << "\n";
                out << "wrote " << out_path << "\n";
            } else {
                out << j.dump(2) << "\n";
            }
            return EXIT_OK;
        }
        if (*formof) {
            auto g = repmatrix_from_json(load_json_file(matrix_path));
            std::vector<std::string> names;
            for (int v = 0; v < g.n(); ++v) names.push_back("x" + std::to_string(v + 1));
            out << rep_to_form(g).str(names) << "\n";
            return EXIT_OK;
        }
        if (*nullsp) {
            auto g = repmatrix_from_json(load_json_file(matrix_path));
            auto ns = null_space(g);
            json j;
            j["schema"] = "soscert.nullspace/1";
            json vecs = json::array();
            for (const auto& t : ns) {
                json v = json::array();
                for (size_t i = 0; i < t.coords.size(); ++i)
                    if (!t.coords[i].is_zero())
                        v.push_back({{"alpha", mi_str(g.order->at(int(i)))},
                                     {"c", t.coords[i].str()}});
                vecs.push_back(v);
            }
            j["basis"] = vecs;
            j["dimension"] = ns.size();
            emit(out, j, json_mode, "null space dimension " + std::to_string(ns.size()));
            return EXIT_OK;
        }
        if (*unique) {
            UniquenessReport<Rat> rep;
            std::vector<std::string> names;
            if (!case_id.empty()) {
                if (case_id == "cone-quartic") {
                    Rat g = Rat::parse(gamma_str);
                    auto order = BasisOrder::graded_lex(4, 2);
                    auto gram = gram_from_sos(cone_quartic<Rat>(g), order);
                    rep = uniqueness_pipeline(gram, cone_quartic_null_basis<Rat>(order, g));
                } else if (case_id == "f-rho") {
                    Rat r = Rat::parse(rho_str);
                    auto order = BasisOrder::graded_lex(3, 3);
                    auto gram = gram_from_sos(f_rho<Rat>(r), order);
                    rep = uniqueness_pipeline(gram, f_rho_null_basis<Rat>(order, r));
                } else {
                    err << "input error: unknown family '" << case_id << "'\n";
                    return EXIT_BADINPUT;
                }
            } else if (!matrix_path.empty()) {
                auto g = repmatrix_from_json(load_json_file(matrix_path));
                rep = uniqueness_pipeline(g);
            } else {
                err << "input error: need --matrix or --name\n";
                return EXIT_BADINPUT;
            }
            for (int v = 0; v < rep.m; ++v) names.push_back("v" + std::to_string(v + 1));
            emit(out, uniqueness_report_to_json(rep, names), json_mode,
                 std::string("verdict: ") +
                     (rep.verdict == UniquenessReport<Rat>::Verdict::UNIQUE      ? "UNIQUE"
                      : rep.verdict == UniquenessReport<Rat>::Verdict::NON_UNIQUE ? "NON_UNIQUE"
                                                                                  : "INCONCLUSIVE") +
                     " (" + rep.detail + ")");
            switch (rep.verdict) {
            case UniquenessReport<Rat>::Verdict::UNIQUE: return EXIT_OK;
            case UniquenessReport<Rat>::Verdict::NON_UNIQUE: return EXIT_REFUTED;
            default: return EXIT_INCONCLUSIVE;
            }
        }
        if (*perturb) {
            auto a = repmatrix_from_json(load_json_file(matrix_path));
            auto b = repmatrix_from_json(load_json_file(matrix_path_b));
            auto rep = perturb_check(a.entries, b.entries);
            emit(out, perturbation_report_to_json(rep), json_mode,
                 rep.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS
                     ? "PSD_FOR_SMALL_EPS at eps = " + rep.epsilon.str()
                     : "NEVER_PSD (kernel violation)");
            return rep.verdict == PerturbationReport::Verdict::PSD_FOR_SMALL_EPS ? EXIT_OK
                                                                                 : EXIT_REFUTED;
        }
        if (*checkpsd) {
            auto g = repmatrix_from_json(load_json_file(matrix_path));
            auto cert = psd_check_exact(g.entries);
            emit(out, ldl_to_json(cert), json_mode,
                 cert.accepted ? (cert.positive_definite ? "positive definite"
                                                         : "positive semidefinite, rank " +
                                                               std::to_string(cert.rank))
                               : "not psd; witness value " + cert.refutation_value.str());
            return cert.accepted ? EXIT_OK : EXIT_REFUTED;
        }
        if (*witness) {
            auto [e, vars] = load_forms_file(forms_path);
            auto z = parse_gauss_point(point);
            auto res = witness_verify(e, z);
            json j;
            j["schema"] = "soscert.witness/1";
            j["verdict"] = res.all_vanish ? "ALL_VANISH" : "FAILS";
            if (!res.all_vanish) j["failing_index"] = res.failing_index + 1;
            json vals = json::array();
            for (const auto& v : res.values) vals.push_back(v.str());
            j["values"] = vals;
            emit(out, j, json_mode,
                 res.all_vanish ? "ALL_VANISH"
                                : "FAILS(" + std::to_string(res.failing_index + 1) + ")");
            return res.all_vanish ? EXIT_OK : EXIT_REFUTED;
        }
        if (*obstruct) {
            auto script = obstruction_script_from_json(load_json_file(script_path));
            auto result = ObstructionReplay(script).run();
            std::ostringstream text;
            for (const auto& pr : result.preconditions)
                text << (pr.ok ? "[ok] " : "[FAIL] ") << pr.title << ": " << pr.detail << "\n";
            for (const auto& st : result.steps)
                text << (st.ok ? "[ok] " : "[FAIL] ") << st.title << ": " << st.detail << "\n";
            bool confirmed = result.status == ReplayResult::Status::NONCOERCIVE_CONFIRMED;
            text << (confirmed ? "NONCOERCIVE_CONFIRMED: " + result.contradiction
                               : "STEP_FAILED(" + std::to_string(result.failed_step) + ")");
            emit(out, replay_to_json(result), json_mode, text.str());
            return confirmed ? EXIT_OK : EXIT_REFUTED;
        }
        if (*game) {
            auto board = game_board_from_json(load_json_file(board_path));
            if (do_search) {
                auto found = game_search(board, budget);
                if (!found) {
                    emit(out, json{{"schema", "soscert.game-search/1"}, {"found", false}},
                         json_mode, "NOT_FOUND");
                    return EXIT_INCONCLUSIVE;
                }
                auto j = game_certificate_to_json(*found);
                j["verdict"] = "PD";
                emit(out, j, json_mode, "found a pd combination with " +
                                            std::to_string(found->lambda.size()) + " minors");
                return EXIT_OK;
            }
            if (cert_path.empty()) {
                err << "input error: need --certificate or --search\n";
                return EXIT_BADINPUT;
            }
            auto cert = game_certificate_from_json(load_json_file(cert_path));
            auto verdict = game_verify(board, cert);
            std::string text = verdict.kind == GameVerdict::Kind::PD    ? "PD"
                               : verdict.kind == GameVerdict::Kind::PSD ? "PSD"
                                                                        : "NOT_PSD";
            json j;
            j["schema"] = "soscert.game-verify/1";
            j["verdict"] = text;
            emit(out, j, json_mode, text);
            return verdict.kind == GameVerdict::Kind::NOT_PSD ? EXIT_REFUTED : EXIT_OK;
        }
        if (*reproduce) {
            ReproduceOptions opt;
            opt.gamma = Rat::parse(gamma_str);
            opt.rho = Rat::parse(rho_str);
            opt.game_budget = budget;
            opt.data_dir = SOSCERT_DATA_DIR;
            std::vector<std::string> ids;
            if (run_all) ids = reproduce_case_names();
            else if (!case_id.empty()) ids = {case_id};
            else {
                err << "input error: name a case or pass --all\n";
                return EXIT_BADINPUT;
            }
            bool all_ok = true;
            json out_all = json::array();
            std::ostringstream text;
            for (const auto& id : ids) {
                auto rep = run_reproduce_case(id, opt);
                all_ok = all_ok && rep.ok();
                out_all.push_back(reproduce_report_to_json(rep));
                text << rep.id << ": " << (rep.ok() ? "ok" : "MISMATCH") << "\n";
                for (const auto& c : rep.checks)
                    text << "  " << (c.ok ? "[ok] " : "[FAIL] ") << c.name
                         << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
            }
            std::string t = text.str();
            if (!t.empty() && t.back() == '\n') t.pop_back();
            emit(out, ids.size() == 1 ? out_all[0] : out_all, json_mode, t);
            return all_ok ? EXIT_OK : EXIT_REFUTED;
        }
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return EXIT_BADINPUT;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BADINPUT;
    }
    err << "input error: no subcommand\n";
    return EXIT_BADINPUT;
}

} // namespace soscert
