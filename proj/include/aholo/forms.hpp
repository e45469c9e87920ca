#pragma once

/// Continuous antisymmetric (A,k)-linear forms on A^n, stored on the wedge
/// basis: a coefficient in A for every strictly increasing k-tuple of
/// coordinate indices.  Evaluation contracts against determinants over A,
/// pullback acts through k x k minors (the k-th compound matrix).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "aholo/algebra.hpp"
#include "aholo/errors.hpp"
#include "aholo/linear.hpp"

namespace aholo {

using IndexTuple = std::vector<int>;  // 1-based, strictly increasing

inline long long wedge_rank(int n, int k) {
    if (k < 0) throw BadIndices("form degree must be >= 0");
    if (k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// All strictly increasing k-tuples from {1..n}, lexicographic.
inline std::vector<IndexTuple> increasing_tuples(int n, int k) {
    std::vector<IndexTuple> out;
    if (k < 0 || k > n) return out;
    IndexTuple t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.push_back(t);
        int pos = k - 1;
        while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++t[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

inline void check_increasing_tuple(const IndexTuple& idx, int n) {
    int prev = 0;
    for (int i : idx) {
        if (i <= prev || i > n) throw BadIndices("wedge index tuple must be strictly increasing within 1..n");
        prev = i;
    }
}

/// The expansion of one wedge generator into signed coordinate-projection
/// tensors: k! terms, one per permutation, carrying the permutation sign.
struct TensorExpansion {
    struct Term {
        int sign;         // +1 or -1
        IndexTuple proj;  // slot t of the term projects argument t onto coordinate proj[t]
    };
    int n = 0;
    int k = 0;
    std::vector<Term> terms;
};

namespace detail {

inline void permutations_with_sign(const IndexTuple& base,
                                   std::vector<TensorExpansion::Term>& out) {
    const int k = static_cast<int>(base.size());
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        int inversions = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
        TensorExpansion::Term t;
        t.sign = (inversions % 2 == 0) ? 1 : -1;
        t.proj.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            t.proj[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        out.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// Signed sum over all permutations of the coordinate projections picked
/// out by the wedge indices; evaluating it on k vectors gives the
/// determinant of their selected coordinates.
inline TensorExpansion antisymmetrize_Fk(const IndexTuple& indices, int n) {
    check_increasing_tuple(indices, n);
    TensorExpansion e;
    e.n = n;
    e.k = static_cast<int>(indices.size());
    detail::permutations_with_sign(indices, e.terms);
    return e;
}

inline AlgebraElement eval_expansion(const TensorExpansion& e,
                                     const std::vector<AModuleVector>& args) {
    if (static_cast<int>(args.size()) != e.k)
        throw RankMismatch("expansion of degree " + std::to_string(e.k) + " got " +
                           std::to_string(args.size()) + " arguments");
    const int m = args.empty() ? 1 : args[0].algebra_dim();
    AlgebraElement acc(m);
    for (const auto& term : e.terms) {
        AlgebraElement prod = Algebra(m).unit();
        for (int slot = 0; slot < e.k; ++slot)
            prod = prod * args[static_cast<std::size_t>(slot)][term.proj[static_cast<std::size_t>(slot)] - 1];
        acc += Cx(static_cast<double>(term.sign), 0.0) * prod;
    }
    return acc;
}

/// Antisymmetric (A,k)-linear form on A^n in wedge coordinates.
/// The coefficient on a tuple I equals the form's value on (e_{i1},...,e_{ik}).
class AntisymForm {
  public:
    AntisymForm() = default;
    AntisymForm(int n, int k, int m) : n_(n), k_(k), m_(m) {
        if (k < 0 || n < 0) throw BadIndices("form degree and rank must be >= 0");
    }

    int rank() const { return n_; }
    int degree() const { return k_; }
    int algebra_dim() const { return m_; }

    void set(const IndexTuple& idx, const AlgebraElement& value) {
        if (static_cast<int>(idx.size()) != k_) throw BadIndices("coefficient tuple has wrong length");
        check_increasing_tuple(idx, n_);
        if (value.is_zero())
            coeffs_.erase(idx);
        else
            coeffs_[idx] = value;
    }

    AlgebraElement coeff(const IndexTuple& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? AlgebraElement(m_) : it->second;
    }

    const std::map<IndexTuple, AlgebraElement>& coeffs() const { return coeffs_; }

  private:
    int n_ = 0, k_ = 0, m_ = 1;
    std::map<IndexTuple, AlgebraElement> coeffs_;
};

inline AntisymForm operator-(const AntisymForm& f, const AntisymForm& g) {
    if (f.rank() != g.rank() || f.degree() != g.degree())
        throw RankMismatch("form difference: shapes differ");
    AntisymForm h(f.rank(), f.degree(), f.algebra_dim());
    for (const auto& [idx, v] : f.coeffs()) h.set(idx, v - g.coeff(idx));
    for (const auto& [idx, v] : g.coeffs())
        if (f.coeffs().find(idx) == f.coeffs().end()) h.set(idx, -v);
    return h;
}

inline double norm_coeffs(const AntisymForm& f) {
    double v = 0.0;
    for (const auto& [idx, c] : f.coeffs()) v = std::max(v, norm(c));
    return v;
}

namespace detail {

// Determinant of the k columns after sorting them into a canonical order.
// Sorting first makes the numeric part independent of the argument order,
// so transposing two arguments flips only the exact integer sign.
inline AlgebraElement signed_canonical_det(AMatrix cols_as_matrix) {
    const int k = static_cast<int>(cols_as_matrix[0].size());
    std::vector<int> order(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
    auto col_less = [&](int a, int b) {
        for (std::size_t r = 0; r < cols_as_matrix.size(); ++r) {
            const AlgebraElement& x = cols_as_matrix[r][static_cast<std::size_t>(a)];
            const AlgebraElement& y = cols_as_matrix[r][static_cast<std::size_t>(b)];
            for (int j = 0; j < x.dim(); ++j) {
                if (x[j].real() != y[j].real()) return x[j].real() < y[j].real();
                if (x[j].imag() != y[j].imag()) return x[j].imag() < y[j].imag();
            }
        }
        return false;
    };
    // insertion sort, counting swaps for the permutation parity
    int swaps = 0;
    for (int i = 1; i < k; ++i) {
        int j = i;
        while (j > 0 && col_less(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j - 1)])) {
            std::swap(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j - 1)]);
            ++swaps;
            --j;
        }
    }
    AMatrix sorted(cols_as_matrix.size());
    for (std::size_t r = 0; r < cols_as_matrix.size(); ++r) {
        sorted[r].reserve(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c)
            sorted[r].push_back(cols_as_matrix[r][static_cast<std::size_t>(order[static_cast<std::size_t>(c)])]);
    }
    AlgebraElement d = det_A(sorted);
    return (swaps % 2 == 0) ? d : -d;
}

}  // namespace detail

/// Value of the form on k module vectors: sum over increasing tuples I of
/// coeff_I times the determinant over A of the arguments' I-rows.
inline AlgebraElement eval_form(const AntisymForm& f, const std::vector<AModuleVector>& args) {
    if (static_cast<int>(args.size()) != f.degree())
        throw RankMismatch("form of degree " + std::to_string(f.degree()) + " got " +
                           std::to_string(args.size()) + " arguments");
    for (const auto& x : args)
        if (x.rank() != f.rank())
            throw RankMismatch("form argument rank mismatch");
    const int k = f.degree();
    AlgebraElement acc(f.algebra_dim());
    if (k == 0) return f.coeff({});
    for (const auto& [idx, c] : f.coeffs()) {
        AMatrix sub(static_cast<std::size_t>(k), std::vector<AlgebraElement>());
        for (int r = 0; r < k; ++r) {
            sub[static_cast<std::size_t>(r)].reserve(static_cast<std::size_t>(k));
            for (int col = 0; col < k; ++col)
                sub[static_cast<std::size_t>(r)].push_back(
                    args[static_cast<std::size_t>(col)][idx[static_cast<std::size_t>(r)] - 1]);
        }
        acc += c * detail::signed_canonical_det(std::move(sub));
    }
    return acc;
}

/// Pullback along an A-linear map F : A^{n1} -> A^{n2} of a degree-k form on
/// A^{n2}.  Coefficientwise this is the action of the k-th compound matrix:
/// (F*f)_I = sum_J f_J det_A(F[J, I]).
inline AntisymForm pullback(const ALinearMap& f, const AntisymForm& form) {
    if (f.rows() != form.rank())
        throw RankMismatch("pullback: map lands in rank " + std::to_string(f.rows()) +
                           " but form lives on rank " + std::to_string(form.rank()));
    const int n1 = f.cols();
    const int k = form.degree();
    AntisymForm out(n1, k, form.algebra_dim());
    if (k > n1) return out;  // zero form: too few source coordinates
    if (k == 0) {
        out.set({}, form.coeff({}));
        return out;
    }
    for (const IndexTuple& target : increasing_tuples(n1, k)) {
        AlgebraElement acc(form.algebra_dim());
        for (const auto& [source, c] : form.coeffs()) {
            AMatrix minor(static_cast<std::size_t>(k), std::vector<AlgebraElement>());
            for (int r = 0; r < k; ++r) {
                minor[static_cast<std::size_t>(r)].reserve(static_cast<std::size_t>(k));
                for (int cidx = 0; cidx < k; ++cidx)
                    minor[static_cast<std::size_t>(r)].push_back(
                        f.at(source[static_cast<std::size_t>(r)] - 1,
                             target[static_cast<std::size_t>(cidx)] - 1));
            }
            acc += c * det_A(minor);
        }
        out.set(target, acc);
    }
    return out;
}

/// Pullback along F^{-1}; the inverse of pullback(F, .) for invertible F.
inline AntisymForm pullback_invert(const ALinearMap& f, const AntisymForm& form) {
    return pullback(inverse_linear(f), form);
}

}  // namespace aholo
