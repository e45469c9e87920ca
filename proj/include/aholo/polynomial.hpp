#pragma once

/// Multivariate polynomial maps A^n -> A^k with coefficients in A.  These
/// are the concrete holomorphic maps of the library: chart transitions,
/// wedge-coefficient functions, and test subjects.  Terms are kept in a
/// sorted map keyed by exponent vector, so arithmetic and serialization
/// are canonical.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "aholo/algebra.hpp"
#include "aholo/errors.hpp"
#include "aholo/linear.hpp"

namespace aholo {

using Exponents = std::vector<int>;

/// One polynomial A^n -> A.
class APoly {
  public:
    APoly() = default;
    APoly(int n, int m) : n_(n), m_(m) {}

    int vars() const { return n_; }
    int algebra_dim() const { return m_; }
    const std::map<Exponents, AlgebraElement>& terms() const { return terms_; }

    void add_term(const Exponents& e, const AlgebraElement& coeff) {
        if (static_cast<int>(e.size()) != n_) throw LengthMismatch("exponent vector has wrong length");
        for (int d : e)
            if (d < 0) throw BadParameters("negative exponent in polynomial term");
        auto it = terms_.find(e);
        AlgebraElement merged = (it == terms_.end()) ? coeff : it->second + coeff;
        if (merged.is_zero())
            terms_.erase(e);
        else
            terms_[e] = merged;
    }

    static APoly constant(int n, const AlgebraElement& c) {
        APoly p(n, c.dim());
        p.add_term(Exponents(static_cast<std::size_t>(n), 0), c);
        return p;
    }

    static APoly variable(int n, int m, int l) {
        APoly p(n, m);
        Exponents e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(l)] = 1;
        p.add_term(e, Algebra(m).unit());
        return p;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }

    AlgebraElement eval(const AModuleVector& point) const {
        if (point.rank() != n_) throw RankMismatch("polynomial expects " + std::to_string(n_) + " variables");
        AlgebraElement acc(m_);
        for (const auto& [e, c] : terms_) {
            AlgebraElement t = c;
            for (int l = 0; l < n_; ++l)
                for (int rep = 0; rep < e[static_cast<std::size_t>(l)]; ++rep) t = t * point[l];
            acc += t;
        }
        return acc;
    }

    friend APoly operator+(const APoly& a, const APoly& b) {
        APoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend APoly operator*(const APoly& a, const APoly& b) {
        APoly r(a.n_, a.m_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend APoly operator*(const AlgebraElement& c, const APoly& a) {
        APoly r(a.n_, a.m_);
        for (const auto& [e, t] : a.terms_) r.add_term(e, c * t);
        return r;
    }

    /// Substitute polynomials for the variables (polynomial composition).
    APoly compose(const std::vector<APoly>& inner) const {
        if (static_cast<int>(inner.size()) != n_)
            throw RankMismatch("composition needs one inner polynomial per variable");
        const int inner_n = inner.empty() ? 0 : inner[0].vars();
        APoly r(inner_n, m_);
        for (const auto& [e, c] : terms_) {
            APoly t = APoly::constant(inner_n, c);
            for (int l = 0; l < n_; ++l)
                for (int rep = 0; rep < e[static_cast<std::size_t>(l)]; ++rep)
                    t = t * inner[static_cast<std::size_t>(l)];
            r = r + t;
        }
        return r;
    }

  private:
    int n_ = 0, m_ = 1;
    std::map<Exponents, AlgebraElement> terms_;
};

/// Polynomial map A^n -> A^k: one APoly per output coordinate.
class PolyMap {
  public:
    PolyMap() = default;
    PolyMap(int n, int k, int m)
        : n_(n), k_(k), m_(m), outputs_(static_cast<std::size_t>(k), APoly(n, m)) {}

    int vars() const { return n_; }
    int outputs() const { return k_; }
    int algebra_dim() const { return m_; }

    const APoly& output(int o) const { return outputs_[static_cast<std::size_t>(o)]; }
    APoly& output(int o) { return outputs_[static_cast<std::size_t>(o)]; }

    /// `output` is 1-based, matching the on-disk term format.
    void add_term(int output, const Exponents& e, const AlgebraElement& coeff) {
        if (output < 1 || output > k_) throw BadIndices("term output index out of range");
        outputs_[static_cast<std::size_t>(output - 1)].add_term(e, coeff);
    }

    int total_degree() const {
        int d = 0;
        for (const auto& p : outputs_) d = std::max(d, p.total_degree());
        return d;
    }

    AModuleVector eval(const AModuleVector& point) const {
        AModuleVector out(k_, m_);
        for (int o = 0; o < k_; ++o) out[o] = outputs_[static_cast<std::size_t>(o)].eval(point);
        return out;
    }

    /// this after `inner`: (this o inner)(z) = this(inner(z)).
    PolyMap compose(const PolyMap& inner) const {
        if (inner.outputs() != n_) throw RankMismatch("composition rank mismatch");
        std::vector<APoly> inner_polys;
        inner_polys.reserve(static_cast<std::size_t>(inner.outputs()));
        for (int o = 0; o < inner.outputs(); ++o) inner_polys.push_back(inner.output(o));
        PolyMap r(inner.vars(), k_, m_);
        for (int o = 0; o < k_; ++o)
            r.outputs_[static_cast<std::size_t>(o)] = outputs_[static_cast<std::size_t>(o)].compose(inner_polys);
        return r;
    }

    static PolyMap identity(int n, int m) {
        PolyMap f(n, n, m);
        for (int l = 0; l < n; ++l) f.outputs_[static_cast<std::size_t>(l)] = APoly::variable(n, m, l);
        return f;
    }

    /// Affine map as a degree-1 polynomial: z -> M z + t.
    static PolyMap affine(const ALinearMap& mat, const AModuleVector& translation) {
        if (mat.rows() != translation.rank()) throw RankMismatch("affine: matrix rows vs translation rank");
        PolyMap f(mat.cols(), mat.rows(), mat.algebra_dim());
        for (int o = 0; o < mat.rows(); ++o) {
            APoly p = APoly::constant(mat.cols(), translation[o]);
            for (int l = 0; l < mat.cols(); ++l)
                p = p + mat.at(o, l) * APoly::variable(mat.cols(), mat.algebra_dim(), l);
            f.outputs_[static_cast<std::size_t>(o)] = p;
        }
        return f;
    }

  private:
    int n_ = 0, k_ = 0, m_ = 1;
    std::vector<APoly> outputs_;
};

/// Split a polynomial map into its m one-component complex polynomial maps
/// (each returned with algebra dimension 1).  A map with A coefficients in
/// A variables acts on each Gelfand component independently; this is the
/// componentwise oracle used across the library's tests.
inline std::vector<PolyMap> decompose_map(const PolyMap& f) {
    std::vector<PolyMap> out;
    out.reserve(static_cast<std::size_t>(f.algebra_dim()));
    for (int j = 0; j < f.algebra_dim(); ++j) {
        PolyMap g(f.vars(), f.outputs(), 1);
        for (int o = 0; o < f.outputs(); ++o)
            for (const auto& [e, c] : f.output(o).terms())
                g.add_term(o + 1, e, AlgebraElement(std::vector<Cx>{c[j]}));
        out.push_back(std::move(g));
    }
    return out;
}

inline PolyMap recompose_map(const std::vector<PolyMap>& components) {
    if (components.empty()) throw LengthMismatch("recompose needs at least one component map");
    const int m = static_cast<int>(components.size());
    const int n = components[0].vars();
    const int k = components[0].outputs();
    PolyMap f(n, k, m);
    for (int j = 0; j < m; ++j) {
        const PolyMap& g = components[static_cast<std::size_t>(j)];
        if (g.vars() != n || g.outputs() != k || g.algebra_dim() != 1)
            throw LengthMismatch("recompose: component maps must share shape and have m = 1");
        for (int o = 0; o < k; ++o)
            for (const auto& [e, c] : g.output(o).terms()) {
                AlgebraElement coeff(m);
                coeff[j] = c[0];
                f.add_term(o + 1, e, coeff);
            }
    }
    return f;
}

}  // namespace aholo
