#pragma once

/// Free Banach A-modules A^n with the max norm and A-linear maps between
/// them, stored as matrices over A.  Everything reduces componentwise to
/// ordinary complex linear algebra, which is also how determinants and
/// inverses are computed.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "aholo/algebra.hpp"
#include "aholo/errors.hpp"

namespace aholo {

using CxMatrix = std::vector<std::vector<Cx>>;

class AModuleVector {
  public:
    AModuleVector() = default;
    AModuleVector(int n, int m) : e_(static_cast<std::size_t>(n), AlgebraElement(m)) {}
    explicit AModuleVector(std::vector<AlgebraElement> entries) : e_(std::move(entries)) {}

    int rank() const { return static_cast<int>(e_.size()); }
    int algebra_dim() const { return e_.empty() ? 0 : e_[0].dim(); }
    const AlgebraElement& operator[](int l) const { return e_[static_cast<std::size_t>(l)]; }
    AlgebraElement& operator[](int l) { return e_[static_cast<std::size_t>(l)]; }
    const std::vector<AlgebraElement>& entries() const { return e_; }

    /// Standard basis vector: 1_A in slot l, zero elsewhere.
    static AModuleVector basis(int n, int m, int l) {
        AModuleVector v(n, m);
        v[l] = Algebra(m).unit();
        return v;
    }

  private:
    std::vector<AlgebraElement> e_;
};

inline void check_same_rank(const AModuleVector& x, const AModuleVector& y) {
    if (x.rank() != y.rank())
        throw RankMismatch("module vectors have ranks " + std::to_string(x.rank()) + " and " +
                           std::to_string(y.rank()));
}

inline AModuleVector operator+(const AModuleVector& x, const AModuleVector& y) {
    check_same_rank(x, y);
    AModuleVector r(x.rank(), x.algebra_dim());
    for (int l = 0; l < x.rank(); ++l) r[l] = x[l] + y[l];
    return r;
}

inline AModuleVector operator-(const AModuleVector& x, const AModuleVector& y) {
    check_same_rank(x, y);
    AModuleVector r(x.rank(), x.algebra_dim());
    for (int l = 0; l < x.rank(); ++l) r[l] = x[l] - y[l];
    return r;
}

inline AModuleVector operator*(const AlgebraElement& a, const AModuleVector& x) {
    AModuleVector r(x.rank(), x.algebra_dim());
    for (int l = 0; l < x.rank(); ++l) r[l] = a * x[l];
    return r;
}

inline AModuleVector operator*(const Cx& c, const AModuleVector& x) {
    AModuleVector r(x.rank(), x.algebra_dim());
    for (int l = 0; l < x.rank(); ++l) r[l] = c * x[l];
    return r;
}

inline double norm(const AModuleVector& x) {
    double v = 0.0;
    for (int l = 0; l < x.rank(); ++l) v = std::max(v, norm(x[l]));
    return v;
}

/// A-linear map A^cols -> A^rows as a rows x cols matrix of algebra elements.
class ALinearMap {
  public:
    ALinearMap() = default;
    ALinearMap(int rows, int cols, int m)
        : rows_(rows), cols_(cols), m_(m),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), AlgebraElement(m)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int algebra_dim() const { return m_; }

    const AlgebraElement& at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }
    AlgebraElement& at(int r, int c) {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
    }

    static ALinearMap identity(int n, int m) {
        ALinearMap f(n, n, m);
        for (int i = 0; i < n; ++i) f.at(i, i) = Algebra(m).unit();
        return f;
    }

    static ALinearMap diagonal(const std::vector<AlgebraElement>& d) {
        const int n = static_cast<int>(d.size());
        ALinearMap f(n, n, d[0].dim());
        for (int i = 0; i < n; ++i) f.at(i, i) = d[i];
        return f;
    }

    /// The j-th Gelfand component as an ordinary complex matrix.
    CxMatrix component_matrix(int j) const {
        CxMatrix mat(static_cast<std::size_t>(rows_), std::vector<Cx>(static_cast<std::size_t>(cols_)));
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) mat[r][c] = at(r, c)[j];
        return mat;
    }

    static ALinearMap from_component_matrices(const std::vector<CxMatrix>& per_component) {
        const int m = static_cast<int>(per_component.size());
        const int rows = static_cast<int>(per_component[0].size());
        const int cols = static_cast<int>(per_component[0][0].size());
        ALinearMap f(rows, cols, m);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                for (int j = 0; j < m; ++j) f.at(r, c)[j] = per_component[j][r][c];
        return f;
    }

  private:
    int rows_ = 0, cols_ = 0, m_ = 1;
    std::vector<AlgebraElement> a_;
};

inline AModuleVector apply_linear(const ALinearMap& f, const AModuleVector& x) {
    if (f.cols() != x.rank())
        throw RankMismatch("map expects rank " + std::to_string(f.cols()) + ", vector has rank " +
                           std::to_string(x.rank()));
    AModuleVector y(f.rows(), f.algebra_dim());
    for (int r = 0; r < f.rows(); ++r) {
        AlgebraElement acc(f.algebra_dim());
        for (int c = 0; c < f.cols(); ++c) acc += f.at(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

/// Matrix product over A: apply(compose(F,G), x) = apply(F, apply(G, x)).
inline ALinearMap compose_linear(const ALinearMap& f, const ALinearMap& g) {
    if (f.cols() != g.rows())
        throw RankMismatch("compose: inner ranks " + std::to_string(f.cols()) + " vs " +
                           std::to_string(g.rows()));
    ALinearMap h(f.rows(), g.cols(), f.algebra_dim());
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c) {
            AlgebraElement acc(f.algebra_dim());
            for (int k = 0; k < f.cols(); ++k) acc += f.at(r, k) * g.at(k, c);
            h.at(r, c) = acc;
        }
    return h;
}

inline ALinearMap operator-(const ALinearMap& f, const ALinearMap& g) {
    if (f.rows() != g.rows() || f.cols() != g.cols())
        throw RankMismatch("matrix difference: shapes differ");
    ALinearMap h(f.rows(), f.cols(), f.algebra_dim());
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < f.cols(); ++c) h.at(r, c) = f.at(r, c) - g.at(r, c);
    return h;
}

/// Operator norm of one component matrix, (C^n, sup) -> (C^k, sup):
/// the maximal absolute row sum.
inline double operator_norm_component(const CxMatrix& mat) {
    double worst = 0.0;
    for (const auto& row : mat) {
        double s = 0.0;
        for (const Cx& v : row) s += std::abs(v);
        worst = std::max(worst, s);
    }
    return worst;
}

inline double operator_norm(const ALinearMap& f) {
    double worst = 0.0;
    for (int j = 0; j < f.algebra_dim(); ++j)
        worst = std::max(worst, operator_norm_component(f.component_matrix(j)));
    return worst;
}

namespace detail {

/// Complex determinant by LU with partial pivoting.  Destroys `a`.
inline Cx lu_determinant(CxMatrix& a) {
    const int n = static_cast<int>(a.size());
    Cx det{1.0, 0.0};
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[col][col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a[r][col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return Cx{0.0, 0.0};
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            const Cx factor = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

inline Cx cx_determinant(CxMatrix a) {
    const int n = static_cast<int>(a.size());
    switch (n) {
        case 0:
            return Cx{1.0, 0.0};
        case 1:
            return a[0][0];
        case 2:
            return a[0][0] * a[1][1] - a[0][1] * a[1][0];
        case 3:
            return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        default:
            return lu_determinant(a);
    }
}

/// Gauss-Jordan inverse with partial pivoting; pivots below
/// `rel_tol * max|entry|` count as singular.
inline bool cx_invert(CxMatrix a, CxMatrix& out, double rel_tol = 1e-13) {
    const int n = static_cast<int>(a.size());
    double scale = 0.0;
    for (const auto& row : a)
        for (const Cx& v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    out.assign(static_cast<std::size_t>(n), std::vector<Cx>(static_cast<std::size_t>(n), Cx{0, 0}));
    for (int i = 0; i < n; ++i) out[i][i] = Cx{1.0, 0.0};
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[col][col]);
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > best) {
                best = std::abs(a[r][col]);
                pivot = r;
            }
        if (best <= rel_tol * scale) return false;
        std::swap(a[pivot], a[col]);
        std::swap(out[pivot], out[col]);
        const Cx inv_pivot = 1.0 / a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] *= inv_pivot;
            out[col][c] *= inv_pivot;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Cx factor = a[r][col];
            if (factor == Cx{0.0, 0.0}) continue;
            for (int c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                out[r][c] -= factor * out[col][c];
            }
        }
    }
    return true;
}

}  // namespace detail

using AMatrix = std::vector<std::vector<AlgebraElement>>;

/// Determinant in the commutative ring A, computed componentwise
/// (cofactor expansion up to 3x3, LU with partial pivoting beyond).
inline AlgebraElement det_A(const AMatrix& mat) {
    const int k = static_cast<int>(mat.size());
    if (k == 0) throw BadIndices("det_A of empty matrix is handled by the caller");
    const int m = mat[0][0].dim();
    AlgebraElement det(m);
    for (int j = 0; j < m; ++j) {
        CxMatrix comp(static_cast<std::size_t>(k), std::vector<Cx>(static_cast<std::size_t>(k)));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) comp[r][c] = mat[r][c][j];
        det[j] = detail::cx_determinant(std::move(comp));
    }
    return det;
}

/// Componentwise matrix inverse of a square A-linear map.  Throws
/// SingularMap naming the components whose complex matrix is singular.
inline ALinearMap inverse_linear(const ALinearMap& f) {
    if (f.rows() != f.cols()) throw RankMismatch("only square maps can be inverted");
    std::vector<CxMatrix> inv_components;
    std::vector<int> singular;
    for (int j = 0; j < f.algebra_dim(); ++j) {
        CxMatrix inv;
        if (!detail::cx_invert(f.component_matrix(j), inv))
            singular.push_back(j);
        else
            inv_components.push_back(std::move(inv));
    }
    if (!singular.empty()) throw SingularMap(std::move(singular));
    return ALinearMap::from_component_matrices(inv_components);
}

}  // namespace aholo
