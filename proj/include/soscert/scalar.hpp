#pragma once

/*
 * Glue for writing algorithms once over the whole scalar tower:
 * embeddings from Q, zero/one, printing, and exact sign oracles.
 */

#include "soscert/algnum.hpp"
#include "soscert/gaussrat.hpp"
#include "soscert/rational.hpp"
#include "soscert/ratfunc.hpp"

#include <stdexcept>
#include <string>

namespace soscert {

template <class K>
concept Ring = requires(K a, K b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    K{};
};

template <class K>
concept Field = Ring<K> && requires(K a, K b) {
    { a / b } -> std::convertible_to<K>;
};

template <class K> inline K from_rat(const Rat& r);
template <> inline Rat from_rat<Rat>(const Rat& r) { return r; }
template <> inline RatFunc from_rat<RatFunc>(const Rat& r) { return RatFunc(r); }
template <> inline AlgNum from_rat<AlgNum>(const Rat& r) { return AlgNum(r); }
template <> inline GaussRat from_rat<GaussRat>(const Rat& r) { return GaussRat(r); }

template <class K> inline K k_zero() { return K{}; }
template <class K> inline K k_one() { return from_rat<K>(Rat(1)); }

template <class K> inline std::string scalar_str(const K& v);
template <> inline std::string scalar_str<Rat>(const Rat& v) { return v.str(); }
template <> inline std::string scalar_str<RatFunc>(const RatFunc& v) { return v.str(); }
template <> inline std::string scalar_str<AlgNum>(const AlgNum& v) { return v.str(); }
template <> inline std::string scalar_str<GaussRat>(const GaussRat& v) { return v.str(); }

// Thrown when a sign query cannot be decided by the available certificate.
struct SignUndecided : std::runtime_error {
    explicit SignUndecided(const std::string& what) : std::runtime_error(what) {}
};

// Exact sign in an ordered field.  Rat and AlgNum decide always.
inline int exact_sign(const Rat& v) { return v.sign(); }
inline int exact_sign(const AlgNum& v) { return v.sign(); }

/*
 * Sign of a rational function whose generator ranges over the open
 * interval (0,1).  Decided by a Bernstein-coefficient positivity
 * certificate on numerator and denominator separately; throws
 * SignUndecided when the certificate is inconclusive.
 */
inline int bernstein_sign_01(const UniPoly& p, int max_raises = 8) {
    if (p.is_zero()) return 0;
    int n = p.degree();
    for (int extra = 0; extra <= max_raises; ++extra) {
        int d = n + extra;
        // b_k = sum_j c_j * C(k,j)/C(d,j) for p = sum c_j t^j raised to degree d
        bool all_nonneg = true, all_nonpos = true;
        for (int k = 0; k <= d; ++k) {
            Rat b(0);
            for (int j = 0; j <= std::min(k, n); ++j) {
                Rat c = p.coeff(j);
                if (c.is_zero()) continue;
                b += c * Rat(binomial(k, j)) / Rat(binomial(d, j));
            }
            if (b.sign() > 0) all_nonpos = false;
            if (b.sign() < 0) all_nonneg = false;
        }
        if (all_nonneg) return 1;
        if (all_nonpos) return -1;
    }
    throw SignUndecided("no Bernstein sign certificate on (0,1) for: " + p.str());
}

inline int exact_sign(const RatFunc& v) {
    if (v.is_zero()) return 0;
    return bernstein_sign_01(v.num()) * bernstein_sign_01(v.den());
}

} // namespace soscert
