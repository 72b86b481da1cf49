#pragma once

/*
 * Univariate rational functions over Q, canonical form: coprime
 * numerator/denominator with monic denominator.  Serves as the
 * coefficient field Q(gamma), Q(rho) for parametric linear algebra.
 */

#include "soscert/rational.hpp"
#include "soscert/upoly.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace soscert {

class RatFunc {
public:
    RatFunc() : num_(), den_(UniPoly::one()) {}
    RatFunc(Rat c) : num_(UniPoly(std::move(c))), den_(UniPoly::one()) {}
    explicit RatFunc(UniPoly n) : num_(std::move(n)), den_(UniPoly::one()) {}
    RatFunc(UniPoly n, UniPoly d) { assign(std::move(n), std::move(d)); }

    static RatFunc var() { return RatFunc(UniPoly::var()); }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RatFunc operator-() const { RatFunc r; r.num_ = -num_; r.den_ = den_; return r; }
    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator*(const RatFunc& o) const {
        return RatFunc(num_ * o.num_, den_ * o.den_);
    }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw std::domain_error("rational function division by zero");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return RatFunc(den_, num_);
    }

    // Exact evaluation at a rational point; the point must not be a pole.
    Rat eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return num_.eval(x) / d;
    }

    std::string str(const std::string& v = "t") const {
        if (den_ == UniPoly::one()) return num_.str(v);
        return "(" + num_.str(v) + ")/(" + den_.str(v) + ")";
    }

private:
    void assign(UniPoly n, UniPoly d) {
        if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (n.is_zero()) { num_ = UniPoly(); den_ = UniPoly::one(); return; }
        UniPoly g = gcd(n, d);
        n = n.exact_div(g);
        d = d.exact_div(g);
        Rat lc = d.lead();
        num_ = n / lc;
        den_ = d / lc;
    }
    UniPoly num_, den_;
};

inline RatFunc ratfunc_normalize(const UniPoly& n, const UniPoly& d) {
    return RatFunc(n, d);
}

} // namespace soscert
