#pragma once

// Shared deterministic generators for the test suites.  Moduli are kept
// away from zero so that relative comparisons and invertibility are
// well-behaved across seeds.

#include <cmath>
#include <random>

#include "aholo/aholo.hpp"

namespace testutil {

using aholo::AlgebraElement;
using aholo::ALinearMap;
using aholo::AModuleVector;
using aholo::Cx;
using aholo::PolyMap;

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Cx cx(double mod_lo = 0.3, double mod_hi = 1.5) {
        const double r = uniform(mod_lo, mod_hi);
        const double th = uniform(0.0, 2.0 * M_PI);
        return Cx(r * std::cos(th), r * std::sin(th));
    }

    AlgebraElement alg(int m, double mod_lo = 0.3, double mod_hi = 1.5) {
        AlgebraElement a(m);
        for (int j = 0; j < m; ++j) a[j] = cx(mod_lo, mod_hi);
        return a;
    }

    AModuleVector vec(int n, int m, double mod_lo = 0.3, double mod_hi = 1.5) {
        AModuleVector v(n, m);
        for (int l = 0; l < n; ++l) v[l] = alg(m, mod_lo, mod_hi);
        return v;
    }

    ALinearMap map(int rows, int cols, int m) {
        ALinearMap f(rows, cols, m);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) f.at(r, c) = alg(m);
        return f;
    }

    /// Well-conditioned square map: dominant diagonal plus a small random part.
    ALinearMap invertible_map(int n, int m) {
        ALinearMap f(n, n, m);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                AlgebraElement a(m);
                for (int j = 0; j < m; ++j)
                    a[j] = (r == c ? cx(1.0, 2.0) : Cx(0, 0)) + 0.25 * cx(0.0, 1.0);
                f.at(r, c) = a;
            }
        return f;
    }

    aholo::AntisymForm form(int n, int k, int m) {
        aholo::AntisymForm f(n, k, m);
        for (const auto& idx : aholo::increasing_tuples(n, k)) f.set(idx, alg(m));
        return f;
    }

    PolyMap poly(int n, int k, int m, int max_degree, int terms_per_output = 4) {
        PolyMap f(n, k, m);
        for (int o = 1; o <= k; ++o)
            for (int t = 0; t < terms_per_output; ++t) {
                aholo::Exponents e(static_cast<std::size_t>(n), 0);
                int budget = uniform_int(0, max_degree);
                for (int l = 0; l < n && budget > 0; ++l) {
                    const int d = uniform_int(0, budget);
                    e[static_cast<std::size_t>(l)] = d;
                    budget -= d;
                }
                f.add_term(o, e, alg(m));
            }
        return f;
    }

  private:
    std::mt19937_64 engine_;
};

/// Three charts over A = C^m with rank 2, glued by polynomial shears and a
/// genuine triple overlap; the 0->2 transition is the exact symbolic
/// composition, so the cocycle identity holds by construction and the
/// validators must confirm it.
inline aholo::Atlas make_three_chart_atlas(int m) {
    using namespace aholo;
    Atlas atlas;
    atlas.m = m;
    atlas.n = 2;
    const Algebra alg(m);

    AlgebraElement a(m), b(m);
    for (int j = 0; j < m; ++j) {
        a[j] = Cx(0.10 - 0.01 * j, 0.02);
        b[j] = Cx(0.08, -0.015 + 0.005 * j);
    }

    const DomainDescriptor big = DomainDescriptor::uniform(2, m, Region::disk(Cx(0, 0), 4.0));
    const DomainDescriptor overlap = DomainDescriptor::uniform(2, m, Region::disk(Cx(0, 0), 1.0));
    AModuleVector origin(2, m);

    atlas.charts.push_back(Chart{"V0", 2, big, origin});
    atlas.charts.push_back(Chart{"V1", 2, big, origin});
    atlas.charts.push_back(Chart{"V2", 2, big, origin});

    auto shear_y = [&](const AlgebraElement& coeff, int sign) {
        // (z1, z2) -> (z1, z2 + sign * coeff * z1^2)
        PolyMap f = PolyMap::identity(2, m);
        f.add_term(2, {2, 0}, Cx(static_cast<double>(sign), 0.0) * coeff);
        return f;
    };
    auto shear_x = [&](const AlgebraElement& coeff, int sign) {
        // (z1, z2) -> (z1 + sign * coeff * z2^2, z2)
        PolyMap f = PolyMap::identity(2, m);
        f.add_term(1, {0, 2}, Cx(static_cast<double>(sign), 0.0) * coeff);
        return f;
    };

    const PolyMap t01 = shear_y(a, +1);
    const PolyMap t10 = shear_y(a, -1);
    const PolyMap t12 = shear_x(b, +1);
    const PolyMap t21 = shear_x(b, -1);
    const PolyMap t02 = t12.compose(t01);
    const PolyMap t20 = t10.compose(t21);

    auto add = [&](const std::string& from, const std::string& to, PolyMap f) {
        TransitionMap t;
        t.from = from;
        t.to = to;
        t.overlap = overlap;
        t.kind = TransitionMap::Kind::polynomial;
        t.poly = std::move(f);
        t.inverse_name = to + "->" + from;
        atlas.transitions.push_back(std::move(t));
    };
    add("V0", "V1", t01);
    add("V1", "V0", t10);
    add("V1", "V2", t12);
    add("V2", "V1", t21);
    add("V0", "V2", t02);
    add("V2", "V0", t20);
    atlas.triples.push_back({0, 1, 2});
    return atlas;
}

}  // namespace testutil
