#pragma once

/// Planar regions used to describe chart domains and overlaps, one region
/// per (variable, algebra component) pair.  All regions are open; a point
/// is a member exactly when its boundary distance is positive.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aholo/algebra.hpp"
#include "aholo/errors.hpp"
#include "aholo/linear.hpp"

namespace aholo {

// Distances on unbounded regions are capped so radius selection stays finite.
inline constexpr double kDistanceCap = 1e9;

struct Region {
    enum class Kind { full_plane, disk, half_plane_im_gt, half_plane_im_lt, punctured_plane, annulus };

    Kind kind = Kind::full_plane;
    Cx center{0.0, 0.0};  // disk
    double radius = 0.0;  // disk
    double c = 0.0;       // half planes
    double r_inner = 0.0, r_outer = 0.0;  // annulus

    static Region full_plane() { return Region{}; }
    static Region disk(Cx center, double radius) {
        if (radius <= 0.0) throw BadParameters("disk radius must be positive");
        Region g;
        g.kind = Kind::disk;
        g.center = center;
        g.radius = radius;
        return g;
    }
    static Region half_plane_im_gt(double c) {
        Region g;
        g.kind = Kind::half_plane_im_gt;
        g.c = c;
        return g;
    }
    static Region half_plane_im_lt(double c) {
        Region g;
        g.kind = Kind::half_plane_im_lt;
        g.c = c;
        return g;
    }
    static Region punctured_plane() {
        Region g;
        g.kind = Kind::punctured_plane;
        return g;
    }
    static Region annulus(double r, double R) {
        if (r < 0.0 || R <= r) throw BadParameters("annulus needs 0 <= r < R");
        Region g;
        g.kind = Kind::annulus;
        g.r_inner = r;
        g.r_outer = R;
        return g;
    }

    /// Signed-ish distance to the boundary: positive inside, <= 0 outside.
    double boundary_distance(const Cx& p) const {
        switch (kind) {
            case Kind::full_plane:
                return kDistanceCap;
            case Kind::disk:
                return radius - std::abs(p - center);
            case Kind::half_plane_im_gt:
                return std::min(p.imag() - c, kDistanceCap);
            case Kind::half_plane_im_lt:
                return std::min(c - p.imag(), kDistanceCap);
            case Kind::punctured_plane:
                return std::min(std::abs(p), kDistanceCap);
            case Kind::annulus:
                return std::min(std::abs(p) - r_inner, r_outer - std::abs(p));
        }
        return 0.0;
    }

    bool contains(const Cx& p) const { return boundary_distance(p) > 0.0; }

    /// Map (u, v) in [0,1)^2 to an interior point with a safety margin, so
    /// sampled points always keep a positive boundary distance.
    Cx sample(double u, double v) const {
        switch (kind) {
            case Kind::full_plane:
                return Cx(4.0 * u - 2.0, 4.0 * v - 2.0);
            case Kind::disk: {
                const double rho = radius * (0.15 + 0.70 * std::sqrt(u));
                const double th = 2.0 * M_PI * v;
                return center + Cx(rho * std::cos(th), rho * std::sin(th));
            }
            case Kind::half_plane_im_gt:
                return Cx(4.0 * u - 2.0, c + 0.2 + 3.0 * v);
            case Kind::half_plane_im_lt:
                return Cx(4.0 * u - 2.0, c - 0.2 - 3.0 * v);
            case Kind::punctured_plane: {
                const double rho = std::exp(std::log(0.4) + u * (std::log(2.5) - std::log(0.4)));
                const double th = 2.0 * M_PI * v;
                return Cx(rho * std::cos(th), rho * std::sin(th));
            }
            case Kind::annulus: {
                const double rho = r_inner + (0.1 + 0.8 * u) * (r_outer - r_inner);
                const double th = 2.0 * M_PI * v;
                return Cx(rho * std::cos(th), rho * std::sin(th));
            }
        }
        return Cx(0.0, 0.0);
    }

    std::string describe() const {
        switch (kind) {
            case Kind::full_plane:
                return "full_plane";
            case Kind::disk:
                return "disk(center=(" + std::to_string(center.real()) + "," +
                       std::to_string(center.imag()) + "), radius=" + std::to_string(radius) + ")";
            case Kind::half_plane_im_gt:
                return "half_plane(Im > " + std::to_string(c) + ")";
            case Kind::half_plane_im_lt:
                return "half_plane(Im < " + std::to_string(c) + ")";
            case Kind::punctured_plane:
                return "punctured_plane";
            case Kind::annulus:
                return "annulus(" + std::to_string(r_inner) + "," + std::to_string(r_outer) + ")";
        }
        return "?";
    }
};

/// Product domain in A^n: one region per (variable, component) pair;
/// membership is the conjunction over all pairs.
struct DomainDescriptor {
    // regions[l][j]: variable l (0-based), component j (0-based)
    std::vector<std::vector<Region>> regions;

    DomainDescriptor() = default;
    DomainDescriptor(int n, int m)
        : regions(static_cast<std::size_t>(n), std::vector<Region>(static_cast<std::size_t>(m))) {}

    static DomainDescriptor full(int n, int m) { return DomainDescriptor(n, m); }

    static DomainDescriptor uniform(int n, int m, const Region& g) {
        DomainDescriptor d(n, m);
        for (auto& row : d.regions)
            for (auto& cell : row) cell = g;
        return d;
    }

    int vars() const { return static_cast<int>(regions.size()); }
    int algebra_dim() const { return regions.empty() ? 0 : static_cast<int>(regions[0].size()); }

    bool contains(const AModuleVector& p) const {
        check_shape(p);
        for (int l = 0; l < vars(); ++l)
            for (int j = 0; j < algebra_dim(); ++j)
                if (!regions[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)].contains(p[l][j]))
                    return false;
        return true;
    }

    double boundary_distance(const AModuleVector& p) const {
        check_shape(p);
        double d = kDistanceCap;
        for (int l = 0; l < vars(); ++l)
            for (int j = 0; j < algebra_dim(); ++j)
                d = std::min(d, regions[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]
                                    .boundary_distance(p[l][j]));
        return d;
    }

    /// One interior point from 2*n*m unit-cube coordinates.
    AModuleVector sample(const std::vector<double>& unit_coords) const {
        const int n = vars();
        const int m = algebra_dim();
        if (static_cast<int>(unit_coords.size()) < 2 * n * m)
            throw LengthMismatch("domain sample needs 2*n*m unit coordinates");
        AModuleVector p(n, m);
        int idx = 0;
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < m; ++j) {
                const double u = unit_coords[static_cast<std::size_t>(idx++)];
                const double v = unit_coords[static_cast<std::size_t>(idx++)];
                p[l][j] = regions[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)].sample(u, v);
            }
        return p;
    }

  private:
    void check_shape(const AModuleVector& p) const {
        if (p.rank() != vars() || p.algebra_dim() != algebra_dim())
            throw RankMismatch("point shape does not match domain descriptor");
    }
};

}  // namespace aholo
