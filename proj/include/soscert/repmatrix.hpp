#pragma once

/*
 * Representation matrices: symmetric matrices indexed by an ordered
 * degree-p multi-index basis, acting as quadratic forms on S^p(R^n).
 *
 * Conventions, fixed once for the whole library:
 *   - A tensor sum c_(ab) E_a (x)_s E_b maps to the matrix with entry
 *     c at (a,b) and (b,a) for a != b, and 2c at (a,a); equivalently
 *     M = sum over ordered pairs of (1/2) M[a][b] E_a (x)_s E_b.
 *   - The represented form is f(x) = sum M[a][b] x^{a+b}.
 *   - As a map on S^p, coords(G t) = M W coords(t) with W = diag(a!/p!),
 *     and the quadratic action is G.st = (W c)^T M (W d).
 */

#include "soscert/form.hpp"
#include "soscert/ldl.hpp"
#include "soscert/matrix.hpp"
#include "soscert/multiindex.hpp"
#include "soscert/symtensor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soscert {

template <class K>
struct RepMatrix {
    BasisOrderPtr order;
    Matrix<K> entries;

    RepMatrix() = default;
    explicit RepMatrix(BasisOrderPtr ord)
        : order(std::move(ord)), entries(order->size(), order->size()) {}
    RepMatrix(BasisOrderPtr ord, Matrix<K> m) : order(std::move(ord)), entries(std::move(m)) {
        size_t d = order->size();
        if (entries.rows() != d || entries.cols() != d)
            throw std::invalid_argument("representation matrix dimension mismatch");
        for (size_t i = 0; i < d; ++i)
            for (size_t j = i + 1; j < d; ++j)
                if (!(entries(i, j) == entries(j, i)))
                    throw std::invalid_argument("representation matrix must be symmetric");
    }

    size_t dim() const { return order->size(); }
    int n() const { return order->n(); }
    int p() const { return order->p(); }

    K& at(const MultiIndex& a, const MultiIndex& b) {
        return entries(order->index_of(a), order->index_of(b));
    }
    void add_sym(const MultiIndex& a, const MultiIndex& b, const K& c) {
        // add c * E_a (x)_s E_b
        int i = order->index_of(a), j = order->index_of(b);
        if (i == j) entries(i, i) = entries(i, i) + c + c;
        else {
            entries(i, j) = entries(i, j) + c;
            entries(j, i) = entries(j, i) + c;
        }
    }

    RepMatrix operator+(const RepMatrix& o) const {
        return RepMatrix(order, entries + o.entries);
    }
    RepMatrix operator-(const RepMatrix& o) const {
        return RepMatrix(order, entries - o.entries);
    }
    RepMatrix operator*(const K& s) const { return RepMatrix(order, entries * s); }
    bool operator==(const RepMatrix& o) const { return entries == o.entries; }
    bool is_zero() const { return entries.is_zero(); }

    // coords(G t) = M W coords(t)
    SymCoords<K> apply(const SymCoords<K>& t) const {
        SymCoords<K> out(order);
        for (size_t j = 0; j < dim(); ++j) {
            if (t.coords[j].is_zero()) continue;
            K wj = t.coords[j] * from_rat<K>(order->self_inner(int(j)));
            for (size_t i = 0; i < dim(); ++i)
                if (!entries(i, j).is_zero()) out.coords[i] = out.coords[i] + entries(i, j) * wj;
        }
        return out;
    }

    // G . s t  (symmetric bilinear action)
    K quad(const SymCoords<K>& s, const SymCoords<K>& t) const {
        K acc{};
        for (size_t i = 0; i < dim(); ++i) {
            if (s.coords[i].is_zero()) continue;
            K wi = s.coords[i] * from_rat<K>(order->self_inner(int(i)));
            for (size_t j = 0; j < dim(); ++j) {
                if (t.coords[j].is_zero() || entries(i, j).is_zero()) continue;
                acc = acc + wi * entries(i, j) * (t.coords[j] * from_rat<K>(order->self_inner(int(j))));
            }
        }
        return acc;
    }

    RepMatrix reordered(const BasisOrderPtr& new_order) const {
        if (!new_order->same_space(*order))
            throw std::invalid_argument("reorder must stay in the same tensor space");
        RepMatrix out(new_order);
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j)
                out.entries(new_order->index_of(order->at(int(i))),
                            new_order->index_of(order->at(int(j)))) = entries(i, j);
        return out;
    }
};

// f(x) = M . x^p x^p = sum M[a][b] x^{a+b}
template <class K>
Form<K> rep_to_form(const RepMatrix<K>& m) {
    Form<K> f(m.n(), 2 * m.p());
    for (size_t i = 0; i < m.dim(); ++i)
        for (size_t j = 0; j < m.dim(); ++j)
            if (!m.entries(i, j).is_zero())
                f.add_term(mi_add(m.order->at(int(i)), m.order->at(int(j))), m.entries(i, j));
    return f;
}

// sum a_j g_j (x) g_j for the coefficient vectors of the squares; psd by construction.
template <class K>
RepMatrix<K> gram_from_sos(const SosExpression<K>& e, BasisOrderPtr order = nullptr) {
    e.validate();
    if (e.squares.empty()) throw std::invalid_argument("empty square list");
    if (!order) order = BasisOrder::graded_lex(e.n(), e.p());
    RepMatrix<K> g(order);
    for (size_t q = 0; q < e.squares.size(); ++q) {
        SymCoords<K> v = e.squares[q].tensor_coords(order);
        for (size_t i = 0; i < order->size(); ++i) {
            if (v.coords[i].is_zero()) continue;
            K ai = e.weights[q] * v.coords[i];
            for (size_t j = 0; j < order->size(); ++j)
                if (!v.coords[j].is_zero())
                    g.entries(i, j) = g.entries(i, j) + ai * v.coords[j];
        }
    }
    return g;
}

// Weighted squares read off an accepted LDL factorization.
template <class K>
SosExpression<K> sos_from_gram(const RepMatrix<K>& g) {
    LdlCertificate<K> cert = psd_check_exact(g.entries);
    if (!cert.accepted)
        throw std::domain_error("matrix is not psd; refutation value " +
                                scalar_str<K>(cert.refutation_value));
    SosExpression<K> e;
    size_t n = g.dim();
    for (size_t k = 0; k < n; ++k) {
        if (cert.D[k].is_zero()) continue;
        Form<K> sq(g.n(), g.p());
        for (size_t i = 0; i < n; ++i)
            if (!cert.L(i, k).is_zero())
                sq.add_term(g.order->at(cert.perm[i]), cert.L(i, k));
        e.weights.push_back(cert.D[k]);
        e.squares.push_back(std::move(sq));
    }
    return e;
}

// Null space of the associated transformation t -> G t, as tensors.
template <class K>
std::vector<SymCoords<K>> null_space(const RepMatrix<K>& g) {
    size_t n = g.dim();
    Matrix<K> mw(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            mw(i, j) = g.entries(i, j) * from_rat<K>(g.order->self_inner(int(j)));
    }
    std::vector<SymCoords<K>> out;
    for (auto& v : kernel_basis(mw)) out.push_back(SymCoords<K>(g.order, std::move(v)));
    return out;
}

/*
 * The change subspace: representation matrices annihilating every
 * rank-one square.  Basis elements are (1/2)(E_a (x)_s E_b - E_a' (x)_s E_b')
 * where (a', b') is the distinguished member of the class a+b = a'+b',
 * chosen as the order-least index pair.
 */
struct ChangeElement {
    std::pair<int, int> member;        // (i <= j): basis indices of E_a (x)_s E_b
    std::pair<int, int> distinguished; // class representative pair
    MultiIndex cls;                    // a + b

    template <class K>
    RepMatrix<K> materialize(const BasisOrderPtr& order) const {
        RepMatrix<K> m(order);
        Rat half(1, 2);
        auto add = [&](std::pair<int, int> pr, const Rat& c) {
            if (pr.first == pr.second)
                m.entries(pr.first, pr.first) =
                    m.entries(pr.first, pr.first) + from_rat<K>(c + c);
            else {
                m.entries(pr.first, pr.second) = m.entries(pr.first, pr.second) + from_rat<K>(c);
                m.entries(pr.second, pr.first) = m.entries(pr.second, pr.first) + from_rat<K>(c);
            }
        };
        add(member, half);
        add(distinguished, -half);
        return m;
    }
};

struct ChangeBasis {
    BasisOrderPtr order;
    std::vector<ChangeElement> elements;

    size_t size() const { return elements.size(); }
};

inline ChangeBasis change_basis(int n, int p, BasisOrderPtr order = nullptr) {
    if (!order) order = BasisOrder::graded_lex(n, p);
    std::map<MultiIndex, std::vector<std::pair<int, int>>> classes;
    int d = static_cast<int>(order->size());
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            classes[mi_add(order->at(i), order->at(j))].push_back({i, j});
    ChangeBasis cb;
    cb.order = order;
    for (auto& [cls, members] : classes) {
        std::sort(members.begin(), members.end());
        for (size_t k = 1; k < members.size(); ++k)
            cb.elements.push_back({members[k], members[0], cls});
    }
    return cb;
}

inline unsigned long change_space_dim(int n, int p) {
    mpz_class pairs = binomial(dim_sym(n, p) + 1, 2);
    mpz_class forms = binomial(n + 2 * p - 1, 2 * p);
    mpz_class d = pairs - forms;
    return d.get_ui();
}

/*
 * Write M2 - M1 as an exact combination of change-basis elements.
 * Fails, naming a monomial, iff the two matrices represent different
 * forms.  Returned coefficients align with cb.elements.
 */
template <class K>
struct ChangeDecomposition {
    bool ok = false;
    std::vector<K> coefficients;
    std::string mismatched_monomial;
};

template <class K>
ChangeDecomposition<K> decompose_into_changes(const RepMatrix<K>& m1, const RepMatrix<K>& m2,
                                              const ChangeBasis& cb) {
    ChangeDecomposition<K> out;
    Matrix<K> d = m2.entries - m1.entries;
    const auto& order = *m1.order;
    // class sums must vanish, then coefficients read off the non-distinguished members
    std::map<MultiIndex, K> class_sum;
    std::map<std::pair<int, int>, K> entry; // tensor coefficient on E_i (x)_s E_j
    int dim = static_cast<int>(order.size());
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            K t = (i == j) ? d(i, i) * from_rat<K>(Rat(1, 2)) : d(i, j);
            if (t.is_zero()) continue;
            entry[{i, j}] = t;
            MultiIndex cls = mi_add(order.at(i), order.at(j));
            auto it = class_sum.find(cls);
            if (it == class_sum.end()) class_sum[cls] = t;
            else it->second = it->second + t;
        }
    for (const auto& [cls, sum] : class_sum)
        if (!sum.is_zero()) {
            out.ok = false;
            out.mismatched_monomial = mi_str(cls);
            return out;
        }
    out.ok = true;
    out.coefficients.reserve(cb.elements.size());
    for (const auto& el : cb.elements) {
        auto it = entry.find(el.member);
        // coefficient c on (1/2)(member - distinguished): member carries c/2
        out.coefficients.push_back(it == entry.end() ? K{} : it->second + it->second);
    }
    return out;
}

// Exact symbolic determinant of a principal submatrix (1-based indices).
template <class K>
K principal_minor_det(const Matrix<K>& m, const std::vector<int>& rows1) {
    size_t k = rows1.size();
    Matrix<K> sub(k, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            int a = rows1[i] - 1, b = rows1[j] - 1;
            if (a < 0 || b < 0 || a >= static_cast<int>(m.rows()) ||
                b >= static_cast<int>(m.cols()))
                throw std::invalid_argument("submatrix index out of range");
            sub(i, j) = m(a, b);
        }
    return det_cofactor(sub);
}

// Cofactor expansion; ring-only (no division), for small symbolic minors.
template <class K>
K det_cofactor(const Matrix<K>& m) {
    size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return k_one<K>();
    if (n == 1) return m(0, 0);
    K acc{};
    for (size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix<K> minor(n - 1, n - 1);
        for (size_t i = 1; i < n; ++i) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = m(i, c);
            }
        }
        K term = m(0, j) * det_cofactor(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/*
 * The one-parameter 3x3 family on S^2(R^2) in the order (2,0),(0,2),(1,1):
 * (E_20 + E_02)^{x2} + a (E_20 (x)_s E_02 - 2 E_11^{x2}); represents
 * (x1^2+x2^2)^2 for every a, psd exactly for -2 <= a <= 0.
 */
template <class K = Rat>
RepMatrix<K> s_a_matrix(const K& a) {
    auto order = BasisOrder::explicit_order(2, 2, {{2, 0}, {0, 2}, {1, 1}});
    RepMatrix<K> m(order);
    K one = k_one<K>();
    m.entries(0, 0) = one;
    m.entries(1, 1) = one;
    m.entries(0, 1) = one + a;
    m.entries(1, 0) = one + a;
    m.entries(2, 2) = K{} - (a + a);
    return m;
}

} // namespace soscert
