#pragma once

/*
 * Real algebraic numbers as residues in Q[s]/(m) where m is squarefree
 * and an isolating interval pins down which real root of m the symbol s
 * stands for.  Sign determination is exact: a gcd against the modulus
 * decides zero, interval bisection decides the sign otherwise.
 *
 * An AlgNum with no context is a plain rational; binary operations
 * promote it into the other operand's quotient ring.
 */

#include "soscert/rational.hpp"
#include "soscert/upoly.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace soscert {

struct AlgCtx {
    UniPoly modulus;   // squarefree, degree >= 2
    Rat lo, hi;        // open interval isolating exactly one real root

    AlgCtx(UniPoly m, Rat l, Rat h) : modulus(std::move(m)), lo(std::move(l)), hi(std::move(h)) {
        if (modulus.degree() < 2)
            throw std::invalid_argument("algebraic context needs degree >= 2 modulus");
        UniPoly sf = squarefree_part(modulus);
        if (sf.degree() != modulus.degree())
            throw std::invalid_argument("modulus must be squarefree");
        auto seq = sturm_sequence(modulus);
        if (modulus.eval(lo).is_zero() || modulus.eval(hi).is_zero() ||
            sturm_count(seq, lo, hi) != 1)
            throw std::invalid_argument("interval does not isolate one root of the modulus");
    }
};

class AlgNum {
public:
    AlgNum() = default;
    AlgNum(Rat c) : r_(UniPoly(std::move(c))) {}
    AlgNum(std::shared_ptr<const AlgCtx> ctx, UniPoly residue)
        : ctx_(std::move(ctx)), r_(std::move(residue)) {
        if (ctx_) r_ = r_ % ctx_->modulus;
    }

    static std::shared_ptr<const AlgCtx> make_ctx(UniPoly m, Rat lo, Rat hi) {
        return std::make_shared<const AlgCtx>(std::move(m), std::move(lo), std::move(hi));
    }
    // The root itself as an element of its ring.
    static AlgNum generator(std::shared_ptr<const AlgCtx> ctx) {
        return AlgNum(std::move(ctx), UniPoly::var());
    }

    const std::shared_ptr<const AlgCtx>& ctx() const { return ctx_; }
    const UniPoly& residue() const { return r_; }
    bool is_rational() const { return r_.degree() <= 0; }
    bool is_zero() const { return sign() == 0; }

    AlgNum operator-() const { return AlgNum(ctx_, -r_); }
    AlgNum operator+(const AlgNum& o) const {
        auto c = join(*this, o);
        return AlgNum(c, r_ + o.r_);
    }
    AlgNum operator-(const AlgNum& o) const {
        auto c = join(*this, o);
        return AlgNum(c, r_ - o.r_);
    }
    AlgNum operator*(const AlgNum& o) const {
        auto c = join(*this, o);
        UniPoly p = r_ * o.r_;
        return AlgNum(c, c ? p % c->modulus : p);
    }
    AlgNum operator/(const AlgNum& o) const { return *this * o.inv(); }
    AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
    AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
    AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }
    AlgNum& operator/=(const AlgNum& o) { return *this = *this / o; }

    bool operator==(const AlgNum& o) const { return (*this - o).sign() == 0; }
    bool operator!=(const AlgNum& o) const { return !(*this == o); }

    AlgNum inv() const {
        if (!ctx_ || is_rational()) {
            if (r_.is_zero()) throw std::domain_error("inverse of zero");
            return AlgNum(ctx_, UniPoly(r_.coeff(0).inv()));
        }
        auto [g, u, v] = ext_gcd(r_, ctx_->modulus);
        (void)v;
        if (g.degree() > 0) {
            if (root_in_interval(g))
                throw std::domain_error("inverse of zero algebraic number");
            throw std::domain_error("modulus splits at this element; use an irreducible modulus");
        }
        // u * r == g (a nonzero constant) mod m
        return AlgNum(ctx_, u / g.coeff(0));
    }

    // Exact sign of the real number this residue evaluates to at the root.
    int sign() const {
        if (!ctx_ || is_rational()) return r_.is_zero() ? 0 : r_.coeff(0).sign();
        UniPoly g = gcd(r_, ctx_->modulus);
        if (g.degree() > 0 && root_in_interval(g)) return 0;
        // r has constant sign near the root once the interval excludes r's roots
        Rat lo = ctx_->lo, hi = ctx_->hi;
        auto rseq = sturm_sequence(squarefree_part(r_));
        auto mseq = sturm_sequence(ctx_->modulus);
        while (true) {
            if (!r_.eval(lo).is_zero() && !r_.eval(hi).is_zero() &&
                sturm_count(rseq, lo, hi) == 0) {
                Rat sample = r_.eval(lo);
                return sample.sign();
            }
            Rat mid = (lo + hi) / Rat(2);
            if (ctx_->modulus.eval(mid).is_zero()) {
                // the root is the rational mid itself
                return r_.eval(mid).sign();
            }
            if (sturm_count(mseq, lo, mid) == 1) hi = mid;
            else lo = mid;
        }
    }

    std::string str(const std::string& v = "s") const { return r_.str(v); }

private:
    static std::shared_ptr<const AlgCtx> join(const AlgNum& a, const AlgNum& b) {
        if (!a.ctx_) return b.ctx_;
        if (!b.ctx_) return a.ctx_;
        if (a.ctx_ == b.ctx_ ||
            (a.ctx_->modulus == b.ctx_->modulus && a.ctx_->lo == b.ctx_->lo &&
             a.ctx_->hi == b.ctx_->hi))
            return a.ctx_;
        throw std::invalid_argument("algebraic numbers from different quotient rings");
    }
    bool root_in_interval(const UniPoly& g) const {
        auto seq = sturm_sequence(squarefree_part(g));
        Rat lo = ctx_->lo, hi = ctx_->hi;
        if (g.eval(lo).is_zero() || g.eval(hi).is_zero()) return true;
        return sturm_count(seq, lo, hi) > 0;
    }
    std::shared_ptr<const AlgCtx> ctx_;
    UniPoly r_;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign algnum_sign(const AlgNum& a) {
    int s = a.sign();
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

} // namespace soscert
