#pragma once

/*
 * Multi-index combinatorics for the symmetric tensor space S^p(R^n):
 * exponent vectors, the dimension count C(n+p-1, p), and ordered basis
 * enumerations.  The canonical order is graded lexicographic, i.e. for
 * fixed degree the exponent vectors descend lexicographically, so for
 * (n,p)=(2,2): (2,0), (1,1), (0,2).  Explicit orders reproduce ad hoc
 * matrix layouts entry-for-entry.
 */

#include "soscert/rational.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

inline mpz_class mi_factorial(const MultiIndex& a) {
    mpz_class f = 1;
    for (int e : a) f *= factorial(e);
    return f;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multi-index size mismatch");
    MultiIndex c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline std::string mi_str(const MultiIndex& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s;
}

inline MultiIndex mi_parse(const std::string& s, int expect_n = -1) {
    MultiIndex a;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) a.push_back(std::stoi(tok));
    if (expect_n >= 0 && static_cast<int>(a.size()) != expect_n)
        throw std::invalid_argument("multi-index '" + s + "' has wrong length");
    return a;
}

inline unsigned long dim_sym(int n, int p) {
    if (n < 1 || p < 1) throw std::invalid_argument("dim_sym needs n >= 1, p >= 1");
    mpz_class d = binomial(n + p - 1, p);
    if (!d.fits_ulong_p()) throw std::overflow_error("dim_sym overflow");
    return d.get_ui();
}

class BasisOrder {
public:
    static std::shared_ptr<const BasisOrder> graded_lex(int n, int p) {
        std::vector<MultiIndex> seq;
        MultiIndex cur(n, 0);
        emit(seq, cur, 0, p, n);
        return std::make_shared<const BasisOrder>(n, p, std::move(seq));
    }

    // Explicit order: must be a permutation of the full degree-p set.
    static std::shared_ptr<const BasisOrder> explicit_order(int n, int p,
                                                            std::vector<MultiIndex> seq) {
        auto canonical = graded_lex(n, p);
        if (seq.size() != canonical->size())
            throw std::invalid_argument("explicit basis order has wrong length");
        std::map<MultiIndex, int> seen;
        for (const auto& a : seq) {
            if (static_cast<int>(a.size()) != n || mi_order(a) != p)
                throw std::invalid_argument("explicit order entry '" + mi_str(a) +
                                            "' is not a degree-" + std::to_string(p) +
                                            " multi-index");
            if (seen.count(a))
                throw std::invalid_argument("explicit order repeats '" + mi_str(a) + "'");
            seen[a] = 1;
        }
        return std::make_shared<const BasisOrder>(n, p, std::move(seq));
    }

    BasisOrder(int n, int p, std::vector<MultiIndex> seq)
        : n_(n), p_(p), seq_(std::move(seq)) {
        for (size_t i = 0; i < seq_.size(); ++i) index_[seq_[i]] = static_cast<int>(i);
    }

    int n() const { return n_; }
    int p() const { return p_; }
    size_t size() const { return seq_.size(); }
    const MultiIndex& at(int i) const { return seq_.at(i); }
    const std::vector<MultiIndex>& sequence() const { return seq_; }
    int index_of(const MultiIndex& a) const {
        auto it = index_.find(a);
        if (it == index_.end())
            throw std::invalid_argument("multi-index '" + mi_str(a) + "' not in basis order");
        return it->second;
    }
    bool same_space(const BasisOrder& o) const { return n_ == o.n_ && p_ == o.p_; }

    // E_alpha . E_alpha = alpha!/p!
    Rat self_inner(int i) const {
        return Rat(mi_factorial(seq_.at(i)), factorial(p_));
    }

private:
    static void emit(std::vector<MultiIndex>& out, MultiIndex& cur, int pos, int rem, int n) {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            emit(out, cur, pos + 1, rem - e, n);
        }
        cur[pos] = 0;
    }

    int n_, p_;
    std::vector<MultiIndex> seq_;
    std::map<MultiIndex, int> index_;
};

using BasisOrderPtr = std::shared_ptr<const BasisOrder>;

// E_alpha . E_beta over a common degree p.
inline Rat basis_inner(const MultiIndex& a, const MultiIndex& b, int p) {
    if (mi_order(a) != p || mi_order(b) != p)
        throw std::invalid_argument("basis_inner degree mismatch");
    if (a != b) return Rat(0);
    return Rat(mi_factorial(a), factorial(p));
}

} // namespace soscert
