#pragma once

/// Gaussian rationals Q(i), used for exact complex root witnesses.

#include "soscert/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace soscert {

class GaussRat {
public:
    GaussRat() = default;
    GaussRat(Rat re) : re_(std::move(re)) {}
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussRat conj() const { return GaussRat(re_, -im_); }
    Rat norm() const { return re_ * re_ + im_ * im_; }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }
    GaussRat operator+(const GaussRat& o) const { return GaussRat(re_ + o.re_, im_ + o.im_); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re_ - o.re_, im_ - o.im_); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussRat operator/(const GaussRat& o) const {
        if (o.is_zero()) throw std::domain_error("Gaussian rational division by zero");
        Rat n = o.norm();
        GaussRat p = *this * o.conj();
        return GaussRat(p.re_ / n, p.im_ / n);
    }
    GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
    GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
    GaussRat& operator/=(const GaussRat& o) { return *this = *this / o; }

    bool operator==(const GaussRat& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    GaussRat inv() const { return GaussRat(Rat(1)) / *this; }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::string im = im_.is_one() ? "i" : (im_ == Rat(-1) ? "-i" : im_.str() + "i");
        if (re_.is_zero()) return im;
        return re_.str() + (im_.sign() > 0 ? "+" : "") + im;
    }

private:
    Rat re_, im_;
};

} // namespace soscert
