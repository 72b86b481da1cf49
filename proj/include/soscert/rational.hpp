#pragma once

/*
 * Exact rational scalar backed by GMP.  Always canonical: coprime
 * numerator/denominator, denominator positive, zero is 0/1.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace soscert {

class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) { v_.canonicalize(); }
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpz_class& n) : v_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p", "p/q" and decimal-free signs, e.g. "-13/50".
    static Rat parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("bad rational literal: '" + s + "'");
        if (q.get_den() == 0)
            throw std::domain_error("rational with zero denominator: '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }
    bool operator<=(const Rat& o) const { return v_ <= o.v_; }
    bool operator>(const Rat& o) const { return v_ > o.v_; }
    bool operator>=(const Rat& o) const { return v_ >= o.v_; }

    Rat abs() const { return sign() < 0 ? -*this : *this; }
    Rat inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    std::string str() const { return v_.get_str(); }

    double to_double() const { return v_.get_d(); }

private:
    mpq_class v_;
};

inline Rat abs(const Rat& r) { return r.abs(); }

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class z;
    if (k > n) return 0;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return z;
}

inline mpz_class factorial(unsigned long n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return z;
}

} // namespace soscert
