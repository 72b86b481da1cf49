#pragma once

/*
 * Sparse multivariate polynomials over an arbitrary coefficient ring.
 * Exponent vectors are fixed-length; the zero polynomial has no terms.
 * Shared by homogeneous forms and by the parameter rings used for
 * symbolic principal minors.
 */

#include "soscert/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

template <class K>
class MPoly {
public:
    using Expo = std::vector<int>;

    MPoly() : nvars_(0) {}
    explicit MPoly(int nvars) : nvars_(nvars) {}
    MPoly(int nvars, const K& c) : nvars_(nvars) {
        if (!c.is_zero()) terms_[Expo(nvars, 0)] = c;
    }

    static MPoly constant(int nvars, const K& c) { return MPoly(nvars, c); }
    static MPoly variable(int nvars, int v, const K& c) {
        MPoly p(nvars);
        Expo e(nvars, 0);
        e[v] = 1;
        if (!c.is_zero()) p.terms_[e] = c;
        return p;
    }
    static MPoly monomial(int nvars, Expo e, const K& c) {
        MPoly p(nvars);
        if (!c.is_zero()) p.terms_[std::move(e)] = c;
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Expo, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    K coeff(const Expo& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K{} : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (s > d) d = s;
        }
        return d;
    }
    int degree_in(int v) const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            if (e[v] > d) d = e[v];
        return d;
    }

    void add_term(const Expo& e, const K& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // A zero-variable polynomial is a plain constant and promotes into
    // any variable space on contact, so generic scalar code can mint
    // zeros and ones without knowing the parameter list.
    MPoly promoted(int nv) const {
        if (nvars_ == nv) return *this;
        if (nvars_ != 0) throw std::invalid_argument("mixed variable counts");
        MPoly r(nv);
        for (const auto& [e, c] : terms_) r.terms_[Expo(nv, 0)] = c;
        return r;
    }

    MPoly operator-() const {
        MPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    MPoly operator+(const MPoly& o) const {
        if (nvars_ != o.nvars_) {
            int nv = std::max(nvars_, o.nvars_);
            return promoted(nv) + o.promoted(nv);
        }
        MPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const {
        if (nvars_ != o.nvars_) {
            int nv = std::max(nvars_, o.nvars_);
            return promoted(nv) * o.promoted(nv);
        }
        MPoly r(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Expo e(nvars_);
                for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MPoly operator*(const K& s) const {
        MPoly r(nvars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    bool operator==(const MPoly& o) const {
        if (nvars_ != o.nvars_) {
            int nv = std::max(nvars_, o.nvars_);
            return promoted(nv) == o.promoted(nv);
        }
        return terms_ == o.terms_;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    K eval(const std::vector<K>& x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw std::invalid_argument("evaluation point has wrong dimension");
        K acc{};
        for (const auto& [e, c] : terms_) {
            K t = c;
            bool zero = false;
            for (int v = 0; v < nvars_ && !zero; ++v)
                for (int k = 0; k < e[v]; ++k) {
                    if (x[v].is_zero()) { zero = true; break; }
                    t = t * x[v];
                }
            if (!zero) acc = acc + t;
        }
        return acc;
    }

    // Substitute a polynomial for variable v.
    MPoly subst(int v, const MPoly& repl) const {
        check(repl);
        MPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Expo base = e;
            int k = base[v];
            base[v] = 0;
            MPoly t = MPoly::monomial(nvars_, base, c);
            for (int i = 0; i < k; ++i) t = t * repl;
            r += t;
        }
        return r;
    }

    // Collect as a polynomial in variable v: result[d] = coefficient of v^d.
    std::vector<MPoly> collect(int v) const {
        std::vector<MPoly> out(degree_in(v) + 1, MPoly(nvars_));
        for (const auto& [e, c] : terms_) {
            Expo base = e;
            int k = base[v];
            base[v] = 0;
            out[k].add_term(base, c);
        }
        return out;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string cs = scalar_str<K>(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (!out.empty()) {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            std::string mono;
            for (int v = 0; v < nvars_; ++v) {
                if (e[v] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names.at(v);
                if (e[v] > 1) mono += "^" + std::to_string(e[v]);
            }
            if (mono.empty()) out += cs;
            else if (cs == "1") out += mono;
            else if (cs == "-1" && out.empty()) out += "-" + mono;
            else out += cs + "*" + mono;
        }
        return out;
    }

private:
    void check(const MPoly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("mixed variable counts");
    }
    int nvars_;
    std::map<Expo, K> terms_;
};

using ParamPoly = MPoly<Rat>;

template <> inline ParamPoly from_rat<ParamPoly>(const Rat& r) { return ParamPoly(0, r); }
template <> inline std::string scalar_str<ParamPoly>(const ParamPoly& v) {
    std::vector<std::string> names;
    for (int i = 0; i < v.nvars(); ++i) names.push_back("p" + std::to_string(i));
    return v.str(names);
}

/*
 * Rewrite x_v^k -> repl to a fixpoint: every monomial with exponent
 * >= k on x_v loses k and gains a factor repl.  Used to reduce
 * identities modulo power relations like r^3 = -1/2, c^2 = 2 r^2.
 */
template <class K>
MPoly<K> reduce_power(MPoly<K> p, int var, int k, const MPoly<K>& repl) {
    while (true) {
        bool changed = false;
        MPoly<K> next(p.nvars());
        for (const auto& [e, c] : p.terms()) {
            if (e[var] >= k) {
                auto e2 = e;
                e2[var] -= k;
                next += MPoly<K>::monomial(p.nvars(), e2, c) * repl;
                changed = true;
            } else {
                next.add_term(e, c);
            }
        }
        p = std::move(next);
        if (!changed) return p;
    }
}

} // namespace soscert
