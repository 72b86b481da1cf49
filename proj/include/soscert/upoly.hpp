#pragma once

/*
 * Dense univariate polynomials over the rationals, plus the Euclidean
 * toolkit (gcd, squarefree part) and Sturm-sequence real root isolation.
 */

#include "soscert/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace soscert {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(Rat c) { if (!c.is_zero()) c_ = {std::move(c)}; }
    // Coefficients lowest degree first; trailing zeros trimmed.
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly one() { return UniPoly(Rat(1)); }
    static UniPoly var() { return UniPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
    static UniPoly monomial(int deg, Rat c) {
        std::vector<Rat> v(deg + 1);
        v[deg] = std::move(c);
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rat(0);
    }
    const Rat& lead() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && lead().is_one(); }

    UniPoly operator-() const {
        std::vector<Rat> v(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
        return UniPoly(std::move(v));
    }
    UniPoly operator+(const UniPoly& o) const {
        std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
        for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(int(i)) + o.coeff(int(i));
        return UniPoly(std::move(v));
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Rat> v(c_.size() + o.c_.size() - 1);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                v[i + j] += c_[i] * o.c_[j];
        return UniPoly(std::move(v));
    }
    UniPoly operator*(const Rat& s) const {
        if (s.is_zero()) return UniPoly();
        std::vector<Rat> v(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
        return UniPoly(std::move(v));
    }
    UniPoly operator/(const Rat& s) const { return *this * s.inv(); }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    // Quotient and remainder; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        UniPoly r = *this;
        std::vector<Rat> q(std::max<int>(degree() - d.degree() + 1, 0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rat f = r.lead() / d.lead();
            q[k] = f;
            r = r - d.shifted(k) * f;
        }
        return {UniPoly(std::move(q)), r};
    }
    UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }
    UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }

    // Exact division; throws if the remainder is nonzero.
    UniPoly exact_div(const UniPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }

    UniPoly shifted(int k) const { // multiply by X^k
        if (is_zero()) return UniPoly();
        std::vector<Rat> v(c_.size() + k);
        for (size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
        return UniPoly(std::move(v));
    }

    UniPoly derivative() const {
        if (degree() < 1) return UniPoly();
        std::vector<Rat> v(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(long(i));
        return UniPoly(std::move(v));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UniPoly monic() const {
        if (is_zero()) return UniPoly();
        return *this / lead();
    }

    // Composition p(q(t)).
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * q + UniPoly(c_[i]);
        return acc;
    }

    std::string str(const std::string& v = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            Rat c = coeff(k);
            if (c.is_zero()) continue;
            if (!out.empty()) { out += (c.sign() > 0) ? " + " : " - "; c = c.abs(); }
            else if (c.sign() < 0) { out += "-"; c = c.abs(); }
            if (k == 0) { out += c.str(); continue; }
            std::string vp = v + (k > 1 ? "^" + std::to_string(k) : "");
            out += c.is_one() ? vp : c.str() + "*" + vp;
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x % y;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

// g = gcd(a,b) monic, with u*a + v*b = g.
inline std::tuple<UniPoly, UniPoly, UniPoly> ext_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    UniPoly u0 = UniPoly::one(), u1;
    UniPoly v0, v1 = UniPoly::one();
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        r0 = r1; r1 = r2;
        UniPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (r0.is_zero()) return {r0, u0, v0};
    Rat lc = r0.lead();
    return {r0 / lc, u0 / lc, v0 / lc};
}

inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() < 1) return p.is_zero() ? p : UniPoly::one();
    UniPoly g = gcd(p, p.derivative());
    return p.exact_div(g).monic();
}

// ---- Sturm sequences and real root isolation ------------------------------

inline std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    std::vector<UniPoly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    UniPoly d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (true) {
        const UniPoly& a = seq[seq.size() - 2];
        const UniPoly& b = seq[seq.size() - 1];
        UniPoly r = a % b;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

inline int sturm_variations(const std::vector<UniPoly>& seq, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& q : seq) {
        int s = q.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Number of distinct real roots in (a, b]; requires a < b.
inline int sturm_count(const std::vector<UniPoly>& seq, const Rat& a, const Rat& b) {
    return sturm_variations(seq, a) - sturm_variations(seq, b);
}

struct RootInterval {
    Rat lo, hi; // open interval (lo, hi) holding exactly one real root
};

// Cauchy bound: all real roots lie in (-B, B).
inline Rat root_bound(const UniPoly& p) {
    Rat m(0);
    const Rat lc = p.lead().abs();
    for (int k = 0; k < p.degree(); ++k) {
        Rat a = p.coeff(k).abs() / lc;
        if (a > m) m = a;
    }
    return m + Rat(1);
}

// Disjoint open intervals, one per distinct real root, sorted ascending.
inline std::vector<RootInterval> isolate_real_roots(const UniPoly& p) {
    if (p.is_zero())
        throw std::domain_error("zero polynomial has no isolated roots");
    UniPoly q = squarefree_part(p);
    if (q.degree() < 1) return {};
    auto seq = sturm_sequence(q);
    Rat bound = root_bound(q);

    std::vector<RootInterval> out;
    struct Seg { Rat lo, hi; int count; };
    std::vector<Seg> work;
    // Nudge endpoints off roots: q(±bound) != 0 since bound exceeds all roots.
    work.push_back({-bound, bound, sturm_count(seq, -bound, bound)});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        Rat mid = (s.lo + s.hi) / Rat(2);
        if (q.eval(mid).is_zero()) {
            // mid is a (simple) root; fence it off with a shrinking radius
            Rat r = (s.hi - s.lo) / Rat(4);
            while (q.eval(mid - r).is_zero() || q.eval(mid + r).is_zero() ||
                   sturm_count(seq, mid - r, mid + r) != 1)
                r = r / Rat(2);
            out.push_back({mid - r, mid + r});
            int left = sturm_count(seq, s.lo, mid - r);
            int right = sturm_count(seq, mid + r, s.hi);
            if (left > 0) work.push_back({s.lo, mid - r, left});
            if (right > 0) work.push_back({mid + r, s.hi, right});
        } else {
            int left = sturm_count(seq, s.lo, mid);
            work.push_back({s.lo, mid, left});
            work.push_back({mid, s.hi, s.count - left});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

// Shrink an isolating interval for the unique root of squarefree p in (lo,hi).
inline RootInterval refine_interval(const UniPoly& p, RootInterval iv, const Rat& width) {
    UniPoly q = squarefree_part(p);
    auto seq = sturm_sequence(q);
    if (sturm_count(seq, iv.lo, iv.hi) != 1)
        throw std::domain_error("interval does not isolate a single root");
    while (iv.hi - iv.lo > width) {
        Rat mid = (iv.lo + iv.hi) / Rat(2);
        if (q.eval(mid).is_zero()) {
            Rat r = (iv.hi - iv.lo) / Rat(8);
            while (q.eval(mid - r).is_zero() || q.eval(mid + r).is_zero()) r = r / Rat(2);
            iv = {mid - r, mid + r};
            continue;
        }
        if (sturm_count(seq, iv.lo, mid) == 1) iv.hi = mid;
        else iv.lo = mid;
    }
    return iv;
}

} // namespace soscert
