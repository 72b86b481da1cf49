#pragma once

/*
 * Homogeneous multivariate polynomials (forms) over a scalar field,
 * weighted sum-of-squares expressions, and the bridge to symmetric
 * tensor coordinates: a degree-p form sum a_alpha x^alpha corresponds
 * to the tensor sum a_alpha E_alpha, since E_alpha . x^{otimes p} = x^alpha.
 */

#include "soscert/mpoly.hpp"
#include "soscert/multiindex.hpp"
#include "soscert/symtensor.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

template <class K>
class Form {
public:
    Form() : n_(0), degree_(0), p_(0) {}
    Form(int n, int degree) : n_(n), degree_(degree), p_(n) {}
    Form(int n, int degree, MPoly<K> p) : n_(n), degree_(degree), p_(std::move(p)) {
        if (p_.nvars() != n) throw std::invalid_argument("form variable count mismatch");
        for (const auto& [e, c] : p_.terms())
            if (mi_order(e) != degree)
                throw std::invalid_argument("non-homogeneous term of degree " +
                                            std::to_string(mi_order(e)) + " in degree-" +
                                            std::to_string(degree) + " form");
    }

    int n() const { return n_; }
    int degree() const { return degree_; }
    const MPoly<K>& poly() const { return p_; }
    bool is_zero() const { return p_.is_zero(); }
    K coeff(const MultiIndex& a) const { return p_.coeff(a); }

    void add_term(const MultiIndex& a, const K& c) {
        if (static_cast<int>(a.size()) != n_ || mi_order(a) != degree_)
            throw std::invalid_argument("term does not match form degree");
        p_.add_term(a, c);
    }

    Form operator+(const Form& o) const {
        require_same_shape(o);
        return Form(n_, degree_, p_ + o.p_);
    }
    Form operator-(const Form& o) const {
        require_same_shape(o);
        return Form(n_, degree_, p_ - o.p_);
    }
    Form operator-() const { return Form(n_, degree_, -p_); }
    Form operator*(const K& s) const { return Form(n_, degree_, p_ * s); }
    Form operator*(const Form& o) const {
        if (n_ != o.n_) throw std::invalid_argument("form variable count mismatch");
        return Form(n_, degree_ + o.degree_, p_ * o.p_);
    }
    bool operator==(const Form& o) const { return n_ == o.n_ && p_ == o.p_; }
    bool operator!=(const Form& o) const { return !(*this == o); }

    template <class K2>
    K2 eval_at(const std::vector<K2>& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("evaluation point has wrong dimension");
        K2 acc{};
        for (const auto& [e, c] : p_.terms()) {
            K2 t = lift_coeff<K2>(c);
            bool zero = false;
            for (int v = 0; v < n_ && !zero; ++v)
                for (int k = 0; k < e[v]; ++k) {
                    if (x[v].is_zero()) { zero = true; break; }
                    t = t * x[v];
                }
            if (!zero) acc = acc + t;
        }
        return acc;
    }

    // Tensor coordinates of a degree-p form: coefficient a_alpha on E_alpha.
    SymCoords<K> tensor_coords(const BasisOrderPtr& order) const {
        if (order->n() != n_ || order->p() != degree_)
            throw std::invalid_argument("basis order does not match the form");
        SymCoords<K> t(order);
        for (const auto& [e, c] : p_.terms()) t.coords[order->index_of(e)] = c;
        return t;
    }
    static Form from_tensor_coords(const SymCoords<K>& t) {
        Form f(t.order->n(), t.order->p());
        for (size_t i = 0; i < t.coords.size(); ++i)
            if (!t.coords[i].is_zero()) f.add_term(t.order->at(int(i)), t.coords[i]);
        return f;
    }

    // Every exponent of variable v even?  Returns an offending index otherwise.
    bool even_in(int v, MultiIndex* offending = nullptr) const {
        for (const auto& [e, c] : p_.terms())
            if (e[v] % 2 != 0) {
                if (offending) *offending = e;
                return false;
            }
        return true;
    }

    std::string str(const std::vector<std::string>& names) const { return p_.str(names); }

private:
    template <class K2>
    static K2 lift_coeff(const K& c) {
        if constexpr (std::is_same_v<K, K2>) return c;
        else if constexpr (std::is_same_v<K, Rat>) return from_rat<K2>(c);
        else static_assert(std::is_same_v<K, K2>, "no coefficient embedding available");
    }
    void require_same_shape(const Form& o) const {
        if (n_ != o.n_ || degree_ != o.degree_)
            throw std::invalid_argument("form shape mismatch");
    }
    int n_, degree_;
    MPoly<K> p_;
};

template <class K>
struct SosExpression {
    std::vector<K> weights;        // strictly positive
    std::vector<Form<K>> squares;  // all of equal degree p and variable count n

    void validate() const {
        if (weights.size() != squares.size())
            throw std::invalid_argument("weight/square count mismatch");
        for (size_t j = 1; j < squares.size(); ++j)
            if (squares[j].n() != squares[0].n() || squares[j].degree() != squares[0].degree())
                throw std::invalid_argument("squares of mixed shape");
    }
    int n() const { return squares.empty() ? 0 : squares[0].n(); }
    int p() const { return squares.empty() ? 0 : squares[0].degree(); }
};

// sum_j a_j p_j^2, expanded and collected.
template <class K>
Form<K> sos_expand(const SosExpression<K>& e) {
    e.validate();
    if (e.squares.empty()) return Form<K>();
    Form<K> acc(e.n(), 2 * e.p());
    for (size_t j = 0; j < e.squares.size(); ++j)
        acc = acc + (e.squares[j] * e.squares[j]) * e.weights[j];
    return acc;
}

/*
 * Substitute x_k^2 -> r(new variables) in a form that is even in x_k.
 * `embed` maps each old variable to its index in the new variable space;
 * r is a form of degree 2 over the new space.
 */
template <class K>
Form<K> even_substitute(const Form<K>& f, int k, const Form<K>& r,
                        const std::vector<int>& embed) {
    if (static_cast<int>(embed.size()) != f.n())
        throw std::invalid_argument("variable embedding has wrong length");
    MultiIndex bad;
    if (!f.even_in(k, &bad))
        throw std::invalid_argument("form is not even in variable " + std::to_string(k) +
                                    " (term " + mi_str(bad) + ")");
    if (r.degree() != 2)
        throw std::invalid_argument("replacement must be quadratic");
    int m = r.n();
    Form<K> out(m, f.degree());
    for (const auto& [e, c] : f.poly().terms()) {
        MPoly<K> term = MPoly<K>::constant(m, c);
        for (int v = 0; v < f.n(); ++v) {
            if (e[v] == 0) continue;
            if (v == k) {
                for (int t = 0; t < e[v] / 2; ++t) term = term * r.poly();
            } else {
                typename MPoly<K>::Expo mono(m, 0);
                mono[embed[v]] = e[v];
                term = term * MPoly<K>::monomial(m, mono, k_one<K>());
            }
        }
        out = out + Form<K>(m, f.degree(), term);
    }
    return out;
}

// Same-space convenience overload: x_k^2 -> r over the same variables.
template <class K>
Form<K> even_substitute(const Form<K>& f, int k, const Form<K>& r) {
    std::vector<int> embed(f.n());
    for (int i = 0; i < f.n(); ++i) embed[i] = i;
    return even_substitute(f, k, r, embed);
}

} // namespace soscert
