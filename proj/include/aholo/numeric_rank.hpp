#pragma once

/// Rank computation for the per-component complex matrices of the Cech
/// module.  Matrices with exact integer entries get fraction-free Gaussian
/// elimination; everything else goes through a one-sided Jacobi SVD with a
/// relative singular-value threshold.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "aholo/errors.hpp"
#include "aholo/linear.hpp"

namespace aholo {

namespace detail {

/// Singular values by one-sided Jacobi: rotate column pairs until all are
/// numerically orthogonal, then read off the column norms.
inline std::vector<double> jacobi_singular_values(CxMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    if (rows == 0 || cols == 0) return {};
    // store column-major for cache-friendly column ops
    std::vector<std::vector<Cx>> col(cols, std::vector<Cx>(rows));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) col[c][r] = a[r][c];

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p)
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0;
                Cx gamma{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += std::norm(col[p][r]);
                    beta += std::norm(col[q][r]);
                    gamma += std::conj(col[p][r]) * col[q][r];
                }
                const double g = std::abs(gamma);
                if (g <= 1e-15 * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                const Cx phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = ((zeta >= 0.0) ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const Cx vp = col[p][r];
                    const Cx vq = col[q][r];
                    col[p][r] = cs * vp - sn * std::conj(phase) * vq;
                    col[q][r] = sn * phase * vp + cs * vq;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::norm(col[c][r]);
        sv[c] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

/// Fraction-free (Bareiss) elimination rank over the integers with full
/// pivoting.  Returns -1 if intermediate values threaten to overflow.
inline int bareiss_rank(std::vector<std::vector<std::int64_t>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    constexpr std::int64_t guard = (1LL << 62);
    int rank = 0;
    std::int64_t prev = 1;
    for (int step = 0; step < std::min(rows, cols); ++step) {
        int pr = -1, pc = -1;
        for (int r = rank; r < rows && pr < 0; ++r)
            for (int c = rank; c < cols; ++c)
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
        if (pr < 0) break;
        std::swap(a[static_cast<std::size_t>(pr)], a[static_cast<std::size_t>(rank)]);
        for (int r = 0; r < rows; ++r)
            std::swap(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(pc)],
                      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(rank)]);
        const std::int64_t pivot = a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(rank)];
        for (int r = rank + 1; r < rows; ++r)
            for (int c = rank + 1; c < cols; ++c) {
                const __int128 num =
                    static_cast<__int128>(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) * pivot -
                    static_cast<__int128>(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(rank)]) *
                        a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
                const __int128 val = num / prev;
                if (val > guard || val < -guard) return -1;
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    static_cast<std::int64_t>(val);
            }
        for (int r = rank + 1; r < rows; ++r)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(rank)] = 0;
        prev = pivot;
        ++rank;
    }
    return rank;
}

inline bool integer_entries(const CxMatrix& a, std::vector<std::vector<std::int64_t>>& out) {
    out.assign(a.size(), {});
    for (std::size_t r = 0; r < a.size(); ++r) {
        out[r].resize(a[r].size());
        for (std::size_t c = 0; c < a[r].size(); ++c) {
            const Cx v = a[r][c];
            if (v.imag() != 0.0) return false;
            const double rounded = std::nearbyint(v.real());
            if (rounded != v.real() || std::abs(rounded) > 1e12) return false;
            out[r][c] = static_cast<std::int64_t>(rounded);
        }
    }
    return true;
}

}  // namespace detail

/// Numerical rank with relative threshold `rel_tol * sigma_max`.  Exact
/// integer matrices bypass floating point entirely.  Throws
/// RankInstability when a singular value sits within a factor sqrt(10) of
/// the threshold on either side, because the rank would then hinge on the
/// threshold choice.
inline int matrix_rank(const CxMatrix& a, double rel_tol = 1e-9) {
    if (a.empty() || a[0].empty()) return 0;
    std::vector<std::vector<std::int64_t>> ints;
    if (detail::integer_entries(a, ints)) {
        const int rank = detail::bareiss_rank(std::move(ints));
        if (rank >= 0) return rank;
    }
    const std::vector<double> sv = detail::jacobi_singular_values(a);
    if (sv.empty() || sv[0] == 0.0) return 0;
    const double threshold = rel_tol * sv[0];
    const double lo = threshold / std::sqrt(10.0);
    const double hi = threshold * std::sqrt(10.0);
    int rank = 0;
    for (double s : sv) {
        if (s > lo && s < hi)
            throw RankInstability("singular value " + std::to_string(s) +
                                  " straddles the rank threshold " + std::to_string(threshold));
        if (s > threshold) ++rank;
    }
    return rank;
}

}  // namespace aholo
