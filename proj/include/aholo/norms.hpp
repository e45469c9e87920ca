#pragma once

/// Norm computation for continuous multilinear maps.  Only k = 1 admits an
/// exact value at reasonable cost (the sup-to-sup operator norm per
/// component, i.e. max absolute row sum).  Higher degrees get a certified
/// bracket: the tensor-expansion coefficient sum from above and a
/// deterministic torus-grid search from below.

#include <algorithm>
#include <cmath>
#include <vector>

#include "aholo/forms.hpp"
#include "aholo/linear.hpp"

namespace aholo {

enum class NormMode { exact_k1, upper, sampled_lower };

struct NormBracket {
    double lower = 0.0;
    double upper = 0.0;
};

namespace detail {

inline long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Deterministic grid of unit-circle phases, T = 8 per slot, capped at 1e6
/// tuples enumerated lexicographically.  Entries are scalar phases times
/// 1_A, which keeps the search space independent of m while staying a
/// genuine lower bound.
template <typename EvalFn>
double torus_grid_max(int slots, EvalFn&& eval) {
    constexpr int phases = 8;
    constexpr long long cap = 1000000;
    std::vector<Cx> phase(phases);
    for (int t = 0; t < phases; ++t) {
        const double th = 2.0 * M_PI * static_cast<double>(t) / phases;
        phase[static_cast<std::size_t>(t)] = Cx(std::cos(th), std::sin(th));
    }
    std::vector<int> digits(static_cast<std::size_t>(slots), 0);
    std::vector<Cx> values(static_cast<std::size_t>(slots));
    double best = 0.0;
    long long count = 0;
    while (count < cap) {
        for (int s = 0; s < slots; ++s)
            values[static_cast<std::size_t>(s)] = phase[static_cast<std::size_t>(digits[static_cast<std::size_t>(s)])];
        best = std::max(best, eval(values));
        ++count;
        int pos = slots - 1;
        while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == phases - 1) {
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++digits[static_cast<std::size_t>(pos)];
    }
    return best;
}

}  // namespace detail

inline double multilinear_norm(const ALinearMap& f, NormMode mode) {
    switch (mode) {
        case NormMode::exact_k1:
        case NormMode::upper:
            // for k = 1 the row-sum bound is attained, so upper == exact
            return operator_norm(f);
        case NormMode::sampled_lower: {
            const int n = f.cols();
            const int m = f.algebra_dim();
            return detail::torus_grid_max(n, [&](const std::vector<Cx>& vals) {
                AModuleVector x(n, m);
                for (int l = 0; l < n; ++l) x[l] = Algebra(m).scalar(vals[static_cast<std::size_t>(l)]);
                return norm(apply_linear(f, x));
            });
        }
    }
    throw UnsupportedMode("unknown norm mode");
}

inline double multilinear_norm(const AntisymForm& f, NormMode mode) {
    const int k = f.degree();
    const int n = f.rank();
    const int m = f.algebra_dim();
    switch (mode) {
        case NormMode::exact_k1: {
            if (k >= 2) throw UnsupportedMode("exact norm is only available for k = 1");
            if (k == 0) return norm(f.coeff({}));
            ALinearMap row(1, n, m);
            for (int l = 0; l < n; ++l) row.at(0, l) = f.coeff({l + 1});
            return operator_norm(row);
        }
        case NormMode::upper: {
            // each wedge coefficient expands into k! tensor entries of the
            // same modulus; sum their moduli per component and take the max
            double worst = 0.0;
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                for (const auto& [idx, c] : f.coeffs()) s += std::abs(c[j]);
                worst = std::max(worst, s * static_cast<double>(detail::factorial(k)));
            }
            return worst;
        }
        case NormMode::sampled_lower: {
            if (k == 0) return norm(f.coeff({}));
            return detail::torus_grid_max(k * n, [&](const std::vector<Cx>& vals) {
                std::vector<AModuleVector> args(static_cast<std::size_t>(k), AModuleVector(n, m));
                for (int a = 0; a < k; ++a)
                    for (int l = 0; l < n; ++l)
                        args[static_cast<std::size_t>(a)][l] =
                            Algebra(m).scalar(vals[static_cast<std::size_t>(a * n + l)]);
                return norm(eval_form(f, args));
            });
        }
    }
    throw UnsupportedMode("unknown norm mode");
}

inline NormBracket norm_bracket(const ALinearMap& f) {
    const double exact = multilinear_norm(f, NormMode::exact_k1);
    return NormBracket{exact, exact};
}

inline NormBracket norm_bracket(const AntisymForm& f) {
    if (f.degree() <= 1) {
        const double exact = multilinear_norm(f, NormMode::exact_k1);
        return NormBracket{exact, exact};
    }
    return NormBracket{multilinear_norm(f, NormMode::sampled_lower),
                       multilinear_norm(f, NormMode::upper)};
}

}  // namespace aholo
