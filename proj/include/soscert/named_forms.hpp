#pragma once

/*
 * Builders for the named forms and square lists used throughout:
 * the Choi-Lam quartic q and sextic s, their eta-perturbations, the
 * cone quartic family, the noncoercive quartic and sextic, and the
 * f_rho sextic family.
 */

#include "soscert/form.hpp"
#include "soscert/form_parse.hpp"
#include "soscert/repmatrix.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace soscert {

// q(w,x,y,z) = w^4 + x^2 y^2 + y^2 z^2 + z^2 x^2 - 4 w x y z
template <class K = Rat>
Form<K> choi_lam_quartic() {
    return parse_form<K>("w^4 + x^2*y^2 + y^2*z^2 + z^2*x^2 - 4*w*x*y*z",
                         {"w", "x", "y", "z"});
}

// s(x,y,z) = x^4 y^2 + y^4 z^2 + z^4 x^2 - 3 x^2 y^2 z^2
template <class K = Rat>
Form<K> choi_lam_sextic() {
    return parse_form<K>("x^4*y^2 + y^4*z^2 + z^4*x^2 - 3*x^2*y^2*z^2", {"x", "y", "z"});
}

// q_eta = q + eta (x^4 + y^4 + z^4)
template <class K>
Form<K> q_eta(const K& eta) {
    Form<K> f = choi_lam_quartic<K>();
    Form<K> d = parse_form<K>("x^4 + y^4 + z^4", {"w", "x", "y", "z"});
    return f + d * eta;
}

// s_eta = s + eta (x^6 + y^6 + z^6)
template <class K>
Form<K> s_eta(const K& eta) {
    Form<K> f = choi_lam_sextic<K>();
    Form<K> d = parse_form<K>("x^6 + y^6 + z^6", {"x", "y", "z"});
    return f + d * eta;
}

/*
 * Cone quartic squares over R[w,x,y,z]:
 *   a1 (3w^2 - g(x^2+y^2+z^2))^2 + a2 (wx-yz)^2 + a3 (wy-zx)^2 + a4 (wz-xy)^2
 */
template <class K>
SosExpression<K> cone_quartic(const K& g, const std::vector<K>& a = {}) {
    std::vector<std::string> vars{"w", "x", "y", "z"};
    std::map<std::string, K> params{{"g", g}};
    SosExpression<K> e;
    e.squares = {parse_form<K>("3*w^2 - g*(x^2 + y^2 + z^2)", vars, params),
                 parse_form<K>("w*x - y*z", vars, params),
                 parse_form<K>("w*y - z*x", vars, params),
                 parse_form<K>("w*z - x*y", vars, params)};
    e.weights = a.empty() ? std::vector<K>(4, k_one<K>()) : a;
    e.validate();
    return e;
}

/*
 * Noncoercive quartic squares over R[u,v,w,x,y,z]:
 *   (u^2+v^2+vw)^2 + (w^2-g(x^2+y^2+z^2))^2 + (wx-yz)^2 + (wy-zx)^2 + (wz-xy)^2
 */
template <class K>
SosExpression<K> noncoercive_quartic(const K& g) {
    std::vector<std::string> vars{"u", "v", "w", "x", "y", "z"};
    std::map<std::string, K> params{{"g", g}};
    SosExpression<K> e;
    e.squares = {parse_form<K>("u^2 + v^2 + v*w", vars, params),
                 parse_form<K>("w^2 - g*(x^2 + y^2 + z^2)", vars, params),
                 parse_form<K>("w*x - y*z", vars, params),
                 parse_form<K>("w*y - z*x", vars, params),
                 parse_form<K>("w*z - x*y", vars, params)};
    e.weights = std::vector<K>(5, k_one<K>());
    return e;
}

/*
 * f_rho(x,y,z) = x^2 (r^2 x^2 + r y^2 - z^2/2)^2 + y^2 (r^2 y^2 + r z^2 - x^2/2)^2
 *              + z^2 (r^2 z^2 + r x^2 - y^2/2)^2, as squares of three cubics.
 */
template <class K>
SosExpression<K> f_rho(const K& r) {
    std::vector<std::string> vars{"x", "y", "z"};
    std::map<std::string, K> params{{"r", r}};
    SosExpression<K> e;
    e.squares = {parse_form<K>("x*(r^2*x^2 + r*y^2 - 1/2*z^2)", vars, params),
                 parse_form<K>("y*(r^2*y^2 + r*z^2 - 1/2*x^2)", vars, params),
                 parse_form<K>("z*(r^2*z^2 + r*x^2 - 1/2*y^2)", vars, params)};
    e.weights = std::vector<K>(3, k_one<K>());
    return e;
}

/*
 * Null-space parametrization for the cone-quartic Gram matrix, scaled
 * so the echelon column of the uniqueness run takes its classical
 * values g/(1-g), g/(1-g), g/(1-g), 1/(1-g), 2, 2.
 */
template <class K>
std::vector<SymCoords<K>> cone_quartic_null_basis(const BasisOrderPtr& order, const K& g) {
    auto vec = [&](std::initializer_list<std::pair<MultiIndex, K>> entries) {
        SymCoords<K> t(order);
        for (const auto& [a, c] : entries) t.coords[order->index_of(a)] = c;
        return t;
    };
    K one = k_one<K>(), two = one + one;
    return {
        vec({{{1, 1, 0, 0}, two}, {{0, 0, 1, 1}, two}}),
        vec({{{1, 0, 1, 0}, two}, {{0, 1, 0, 1}, two}}),
        vec({{{1, 0, 0, 1}, two}, {{0, 1, 1, 0}, two}}),
        vec({{{2, 0, 0, 0}, g}, {{0, 2, 0, 0}, one}, {{0, 0, 2, 0}, one}, {{0, 0, 0, 2}, one}}),
        vec({{{0, 2, 0, 0}, one}, {{0, 0, 2, 0}, -one}}),
        vec({{{0, 2, 0, 0}, one}, {{0, 0, 0, 2}, -one}}),
    };
}

/*
 * Null-space parametrization for the f_rho Gram matrix on S^3(R^3),
 * scaled to reproduce the sigma/tau/phi echelon column.
 */
template <class K>
std::vector<SymCoords<K>> f_rho_null_basis(const BasisOrderPtr& order, const K& r) {
    auto vec = [&](std::initializer_list<std::pair<MultiIndex, K>> entries) {
        SymCoords<K> t(order);
        for (const auto& [a, c] : entries) t.coords[order->index_of(a)] = c;
        return t;
    };
    K one = k_one<K>();
    K three = from_rat<K>(Rat(3)), six = from_rat<K>(Rat(6));
    return {
        vec({{{3, 0, 0}, one}, {{1, 2, 0}, -three * r}}),
        vec({{{1, 2, 0}, three}, {{1, 0, 2}, six * r}}),
        vec({{{0, 3, 0}, one}, {{0, 1, 2}, -three * r}}),
        vec({{{0, 1, 2}, three}, {{2, 1, 0}, six * r}}),
        vec({{{0, 0, 3}, one}, {{2, 0, 1}, -three * r}}),
        vec({{{2, 0, 1}, three}, {{0, 2, 1}, six * r}}),
        vec({{{1, 1, 1}, six}}),
    };
}

/*
 * g(w,x,y,z) = f_{-1}(sqrt(w^2+x^2), y, z): four cubic squares
 *   (w^3+wx^2-wy^2-wz^2/2)^2 + (xw^2+x^3-xy^2-xz^2/2)^2
 * + (y^3-yz^2-yw^2/2-yx^2/2)^2 + (z^3-zw^2-zx^2-zy^2/2)^2
 */
template <class K = Rat>
SosExpression<K> noncoercive_sextic() {
    std::vector<std::string> vars{"w", "x", "y", "z"};
    SosExpression<K> e;
    e.squares = {parse_form<K>("w^3 + w*x^2 - w*y^2 - 1/2*w*z^2", vars),
                 parse_form<K>("x*w^2 + x^3 - x*y^2 - 1/2*x*z^2", vars),
                 parse_form<K>("y^3 - y*z^2 - 1/2*y*w^2 - 1/2*y*x^2", vars),
                 parse_form<K>("z^3 - z*w^2 - z*x^2 - 1/2*z*y^2", vars)};
    e.weights = std::vector<K>(4, k_one<K>());
    return e;
}

using NamedObject = std::variant<Form<Rat>, SosExpression<Rat>, RepMatrix<Rat>>;

/*
 * Name-based dispatch over the catalog.  Parameters: "eta" for q_eta and
 * s_eta, "gamma" for the quartic families, "rho" for f_rho, "a" for the
 * one-parameter matrix family; weights "a1".."a4" for the cone quartic.
 */
inline NamedObject build_named(const std::string& name,
                               const std::map<std::string, Rat>& params = {}) {
    auto get = [&](const char* key, Rat fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "q") return choi_lam_quartic<Rat>();
    if (name == "s") return choi_lam_sextic<Rat>();
    if (name == "q_eta") return q_eta<Rat>(get("eta", Rat(0)));
    if (name == "s_eta") return s_eta<Rat>(get("eta", Rat(0)));
    if (name == "cone_quartic")
        return cone_quartic<Rat>(get("gamma", Rat(1, 2)),
                                 {get("a1", Rat(1)), get("a2", Rat(1)), get("a3", Rat(1)),
                                  get("a4", Rat(1))});
    if (name == "noncoercive_quartic") return noncoercive_quartic<Rat>(get("gamma", Rat(1, 5)));
    if (name == "f_rho") return f_rho<Rat>(get("rho", Rat(-1)));
    if (name == "noncoercive_sextic") return noncoercive_sextic<Rat>();
    if (name == "S_a") return s_a_matrix<Rat>(get("a", Rat(0)));
    throw std::invalid_argument("unknown named object '" + name + "'");
}

} // namespace soscert
