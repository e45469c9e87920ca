#pragma once

/// The fixed coefficient algebra A = C^m with the sup norm: the algebra of
/// complex-valued functions on a finite set of m points, multiplied and
/// added pointwise.  Every structure in this library decomposes along the
/// m coordinate characters, and most oracles exploit exactly that.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "aholo/errors.hpp"

namespace aholo {

using Cx = std::complex<double>;

struct Algebra;

class AlgebraElement {
  public:
    AlgebraElement() = default;
    explicit AlgebraElement(int m) : comp_(static_cast<std::size_t>(m), Cx{0.0, 0.0}) {
        if (m < 1) throw BadParameters("algebra dimension must be >= 1");
    }
    explicit AlgebraElement(std::vector<Cx> components) : comp_(std::move(components)) {
        if (comp_.empty()) throw BadParameters("algebra element needs at least one component");
    }

    int dim() const { return static_cast<int>(comp_.size()); }
    const Cx& operator[](int j) const { return comp_[static_cast<std::size_t>(j)]; }
    Cx& operator[](int j) { return comp_[static_cast<std::size_t>(j)]; }
    const std::vector<Cx>& components() const { return comp_; }

    bool is_zero() const {
        for (const Cx& c : comp_)
            if (c != Cx{0.0, 0.0}) return false;
        return true;
    }

  private:
    std::vector<Cx> comp_;
};

inline void check_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.dim() != b.dim())
        throw MismatchedAlgebra("algebra elements live in C^" + std::to_string(a.dim()) +
                                " and C^" + std::to_string(b.dim()));
}

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    AlgebraElement r(a.dim());
    for (int j = 0; j < a.dim(); ++j) r[j] = a[j] + b[j];
    return r;
}

inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    AlgebraElement r(a.dim());
    for (int j = 0; j < a.dim(); ++j) r[j] = a[j] - b[j];
    return r;
}

inline AlgebraElement operator-(const AlgebraElement& a) {
    AlgebraElement r(a.dim());
    for (int j = 0; j < a.dim(); ++j) r[j] = -a[j];
    return r;
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    check_same_algebra(a, b);
    AlgebraElement r(a.dim());
    for (int j = 0; j < a.dim(); ++j) r[j] = a[j] * b[j];
    return r;
}

inline AlgebraElement operator*(const Cx& c, const AlgebraElement& a) {
    AlgebraElement r(a.dim());
    for (int j = 0; j < a.dim(); ++j) r[j] = c * a[j];
    return r;
}

inline AlgebraElement operator*(const AlgebraElement& a, const Cx& c) { return c * a; }

inline AlgebraElement& operator+=(AlgebraElement& a, const AlgebraElement& b) {
    a = a + b;
    return a;
}

inline bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.dim() != b.dim()) return false;
    for (int j = 0; j < a.dim(); ++j)
        if (a[j] != b[j]) return false;
    return true;
}

/// Sup norm: the Gelfand transform of C(X) carries the max-over-characters norm.
inline double norm(const AlgebraElement& a) {
    double v = 0.0;
    for (int j = 0; j < a.dim(); ++j) v = std::max(v, std::abs(a[j]));
    return v;
}

/// Componentwise reciprocal.  Invertibility in C^m is exactly "no zero
/// component"; the test is exact, near-singularity shows up in norms.
inline AlgebraElement inverse(const AlgebraElement& a) {
    std::vector<int> zeros;
    for (int j = 0; j < a.dim(); ++j)
        if (a[j] == Cx{0.0, 0.0}) zeros.push_back(j);
    if (!zeros.empty()) throw NonInvertible(std::move(zeros));
    AlgebraElement r(a.dim());
    for (int j = 0; j < a.dim(); ++j) r[j] = 1.0 / a[j];
    return r;
}

/// Character values (evaluation at each of the m points of X).
inline std::vector<Cx> char_decompose(const AlgebraElement& a) { return a.components(); }

struct Algebra {
    int m = 1;

    explicit Algebra(int m_) : m(m_) {
        if (m < 1) throw BadParameters("algebra dimension must be >= 1");
    }

    AlgebraElement zero() const { return AlgebraElement(m); }

    AlgebraElement unit() const {
        AlgebraElement u(m);
        for (int j = 0; j < m; ++j) u[j] = Cx{1.0, 0.0};
        return u;
    }

    /// Embedding of a complex scalar c as c * 1_A.
    AlgebraElement scalar(const Cx& c) const {
        AlgebraElement u(m);
        for (int j = 0; j < m; ++j) u[j] = c;
        return u;
    }

    /// Indicator of one character: 1 in component j, 0 elsewhere.
    AlgebraElement indicator(int j) const {
        AlgebraElement u(m);
        u[j] = Cx{1.0, 0.0};
        return u;
    }

    AlgebraElement char_recompose(const std::vector<Cx>& values) const {
        if (static_cast<int>(values.size()) != m)
            throw LengthMismatch("expected " + std::to_string(m) + " character values, got " +
                                 std::to_string(values.size()));
        return AlgebraElement(values);
    }
};

}  // namespace aholo
