#pragma once

/*
 * Elements of S^p(R^n) in E-basis coordinates.  Storing E-coordinates
 * keeps every entry in the ground field; the alpha!/p! weights of the
 * orthogonal basis enter through the inner product.
 */

#include "soscert/gaussrat.hpp"
#include "soscert/multiindex.hpp"
#include "soscert/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace soscert {

template <class K>
struct SymCoords {
    BasisOrderPtr order;
    std::vector<K> coords; // coefficient on E_alpha, indexed by order

    SymCoords() = default;
    explicit SymCoords(BasisOrderPtr ord)
        : order(std::move(ord)), coords(order->size(), K{}) {}
    SymCoords(BasisOrderPtr ord, std::vector<K> c) : order(std::move(ord)), coords(std::move(c)) {
        if (coords.size() != order->size())
            throw std::invalid_argument("coordinate vector length mismatch");
    }

    K& operator[](const MultiIndex& a) { return coords[order->index_of(a)]; }
    const K& at(const MultiIndex& a) const { return coords[order->index_of(a)]; }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    SymCoords operator+(const SymCoords& o) const {
        SymCoords r(order);
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] = coords[i] + o.coords[i];
        return r;
    }
    SymCoords operator-(const SymCoords& o) const {
        SymCoords r(order);
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] = coords[i] - o.coords[i];
        return r;
    }
    SymCoords operator*(const K& s) const {
        SymCoords r(order);
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] = coords[i] * s;
        return r;
    }
    bool operator==(const SymCoords& o) const { return coords == o.coords; }

    // Inner product with the alpha!/p! weights.
    K inner(const SymCoords& o) const {
        K acc{};
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].is_zero() || o.coords[i].is_zero()) continue;
            acc = acc + coords[i] * o.coords[i] * from_rat<K>(order->self_inner(int(i)));
        }
        return acc;
    }
};

// x^{otimes p} in E-coordinates: coefficient (p!/alpha!) x^alpha on E_alpha.
template <class K>
SymCoords<K> rankone_coords(const std::vector<K>& x, const BasisOrderPtr& order) {
    if (static_cast<int>(x.size()) != order->n())
        throw std::invalid_argument("vector length does not match basis dimension");
    SymCoords<K> t(order);
    for (size_t i = 0; i < order->size(); ++i) {
        const MultiIndex& a = order->at(int(i));
        K term = from_rat<K>(Rat(factorial(order->p()), mi_factorial(a)));
        bool zero = false;
        for (size_t v = 0; v < x.size(); ++v) {
            for (int e = 0; e < a[v]; ++e) {
                if (x[v].is_zero()) { zero = true; break; }
                term = term * x[v];
            }
            if (zero) break;
        }
        t.coords[i] = zero ? K{} : term;
    }
    return t;
}

// z^alpha computed exactly in Q(i).
inline GaussRat tensor_eval(const MultiIndex& a, const std::vector<GaussRat>& z) {
    if (a.size() != z.size()) throw std::invalid_argument("tensor_eval dimension mismatch");
    GaussRat acc{Rat(1)};
    for (size_t v = 0; v < z.size(); ++v)
        for (int e = 0; e < a[v]; ++e) {
            if (z[v].is_zero()) return GaussRat{};
            acc = acc * z[v];
        }
    return acc;
}

// Real and imaginary parts of z^{otimes p} as real symmetric tensors.
inline std::pair<SymCoords<Rat>, SymCoords<Rat>>
complex_rankone_parts(const std::vector<GaussRat>& z, const BasisOrderPtr& order) {
    SymCoords<GaussRat> t = rankone_coords<GaussRat>(z, order);
    SymCoords<Rat> re(order), im(order);
    for (size_t i = 0; i < order->size(); ++i) {
        re.coords[i] = t.coords[i].re();
        im.coords[i] = t.coords[i].im();
    }
    return {re, im};
}

} // namespace soscert
