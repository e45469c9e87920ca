#pragma once

/// Per-component view of a rank-1 atlas: project every chart and gluing to
/// one Gelfand component, walk chains of identifications, and look for
/// pairs of unidentified limit points that identified sequences accumulate
/// on.  The output is exploratory evidence about the naive per-component
/// quotient, not a decision procedure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "aholo/manifold.hpp"

namespace aholo {

/// One-variable Moebius map (a z + b) / (c z + d); affine maps and the
/// coordinate inversion generate these, and chains stay inside the class.
struct Mobius {
    Cx a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

    static Mobius affine(Cx alpha, Cx beta) { return Mobius{alpha, beta, Cx(0, 0), Cx(1, 0)}; }
    static Mobius inversion() { return Mobius{Cx(0, 0), Cx(1, 0), Cx(1, 0), Cx(0, 0)}; }

    Mobius after(const Mobius& inner) const {
        return Mobius{a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                      c * inner.a + d * inner.c, c * inner.b + d * inner.d};
    }

    bool has_pole_at(const Cx& z, double eps = 1e-12) const { return std::abs(c * z + d) <= eps; }

    Cx eval(const Cx& z) const { return (a * z + b) / (c * z + d); }

    bool is_affine(double eps = 1e-14) const { return std::abs(c) <= eps; }
};

struct GlueGluing {
    std::string from, to;
    Region source;                 // overlap projection in from-chart coordinates
    std::optional<Region> image;   // closed form when the map preserves our region kinds
    std::string map_text;
};

struct GlueCandidate {
    std::string chart_a, chart_b;
    Cx p, q;  // unidentified limit points in the two charts
};

struct GlueComponentReport {
    int component = 0;  // 0-based
    std::vector<std::pair<std::string, Region>> chart_regions;
    std::vector<GlueGluing> gluings;
    std::vector<GlueCandidate> candidates;
};

namespace detail {

inline std::string cx_text(const Cx& z) {
    auto one = [](double v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    if (z.imag() == 0.0) return one(z.real());
    if (z.real() == 0.0) return one(z.imag()) + "i";
    return one(z.real()) + (z.imag() < 0 ? "" : "+") + one(z.imag()) + "i";
}

inline std::optional<Region> transform_region(const Region& g, const Mobius& map) {
    if (map.is_affine()) {
        const Cx alpha = map.a / map.d;
        const Cx beta = map.b / map.d;
        switch (g.kind) {
            case Region::Kind::full_plane:
                return Region::full_plane();
            case Region::Kind::disk:
                return Region::disk(alpha * g.center + beta, std::abs(alpha) * g.radius);
            case Region::Kind::half_plane_im_gt:
            case Region::Kind::half_plane_im_lt: {
                if (alpha.imag() != 0.0) return std::nullopt;
                const double a_re = alpha.real();
                if (a_re == 0.0) return std::nullopt;
                const double new_c = a_re * g.c + beta.imag();
                const bool gt = (g.kind == Region::Kind::half_plane_im_gt) == (a_re > 0.0);
                return gt ? Region::half_plane_im_gt(new_c) : Region::half_plane_im_lt(new_c);
            }
            case Region::Kind::punctured_plane:
                if (std::abs(beta) == 0.0) return Region::punctured_plane();
                return std::nullopt;
            case Region::Kind::annulus:
                if (std::abs(beta) == 0.0)
                    return Region::annulus(std::abs(alpha) * g.r_inner, std::abs(alpha) * g.r_outer);
                return std::nullopt;
        }
        return std::nullopt;
    }
    // pure inversion of rotation-invariant regions
    if (std::abs(map.a) == 0.0 && std::abs(map.b - Cx(1, 0)) < 1e-14 &&
        std::abs(map.c - Cx(1, 0)) < 1e-14 && std::abs(map.d) == 0.0) {
        if (g.kind == Region::Kind::punctured_plane) return Region::punctured_plane();
        if (g.kind == Region::Kind::annulus) return Region::annulus(1.0 / g.r_outer, 1.0 / g.r_inner);
    }
    return std::nullopt;
}

struct GlueEdge {
    int from = 0, to = 0;
    Region source;
    Mobius map;
};

struct GlueChain {
    int from = 0, to = 0;
    Mobius map;
    std::vector<std::pair<Mobius, Region>> constraints;  // prefix map into each edge's source
};

struct BoundaryProbe {
    Cx point;
    Cx inward;  // unit direction into the region
};

inline std::vector<BoundaryProbe> boundary_probes(const Region& g) {
    std::vector<BoundaryProbe> out;
    constexpr int count = 16;
    switch (g.kind) {
        case Region::Kind::full_plane:
            break;
        case Region::Kind::disk:
            for (int t = 0; t < count; ++t) {
                const double th = 2.0 * M_PI * t / count;
                const Cx dir(std::cos(th), std::sin(th));
                out.push_back({g.center + g.radius * dir, -dir});
            }
            break;
        case Region::Kind::half_plane_im_gt:
            for (int t = 0; t < count; ++t)
                out.push_back({Cx(-3.0 + 6.0 * t / (count - 1), g.c), Cx(0, 1)});
            break;
        case Region::Kind::half_plane_im_lt:
            for (int t = 0; t < count; ++t)
                out.push_back({Cx(-3.0 + 6.0 * t / (count - 1), g.c), Cx(0, -1)});
            break;
        case Region::Kind::punctured_plane:
            out.push_back({Cx(0, 0), Cx(1, 0)});
            break;
        case Region::Kind::annulus:
            for (int t = 0; t < count; ++t) {
                const double th = 2.0 * M_PI * t / count;
                const Cx dir(std::cos(th), std::sin(th));
                out.push_back({g.r_inner * dir, dir});
                out.push_back({g.r_outer * dir, -dir});
            }
            break;
    }
    return out;
}

inline double boundary_scale(const Region& g) {
    switch (g.kind) {
        case Region::Kind::disk:
            return 0.2 * g.radius;
        case Region::Kind::annulus:
            return 0.2 * (g.r_outer - g.r_inner);
        default:
            return 0.25;
    }
}

}  // namespace detail

/// Build the per-component report for every Gelfand component of a rank-1
/// atlas whose transitions are affine or coordinate inversions.
inline std::vector<GlueComponentReport> componentwise_glue_report(const Atlas& atlas) {
    if (atlas.n != 1)
        throw UnsupportedTransition("glue report requires rank-1 charts (one A-variable)");
    for (const auto& t : atlas.transitions)
        if (t.kind != TransitionMap::Kind::affine &&
            t.kind != TransitionMap::Kind::monomial_inversion)
            throw UnsupportedTransition("glue report cannot project transition " + t.name() +
                                        "; only affine and inversion maps have closed-form "
                                        "component projections");

    std::vector<GlueComponentReport> reports;
    for (int j = 0; j < atlas.m; ++j) {
        GlueComponentReport report;
        report.component = j;
        for (const auto& chart : atlas.charts)
            report.chart_regions.emplace_back(chart.name, chart.domain.regions[0][static_cast<std::size_t>(j)]);

        std::vector<detail::GlueEdge> edges;
        for (const auto& t : atlas.transitions) {
            detail::GlueEdge e;
            e.from = atlas.chart_index(t.from);
            e.to = atlas.chart_index(t.to);
            e.source = t.overlap.regions[0][static_cast<std::size_t>(j)];
            std::string map_text;
            if (t.kind == TransitionMap::Kind::affine) {
                const Cx alpha = t.matrix.at(0, 0)[j];
                const Cx beta = t.translation[0][j];
                e.map = Mobius::affine(alpha, beta);
                map_text = "z -> ";
                if (alpha == Cx(1, 0))
                    map_text += "z";
                else
                    map_text += "(" + detail::cx_text(alpha) + ")*z";
                if (beta != Cx(0, 0)) map_text += " + (" + detail::cx_text(beta) + ")";
            } else {
                e.map = Mobius::inversion();
                map_text = "z -> 1/z";
            }
            report.gluings.push_back(GlueGluing{t.from, t.to, e.source,
                                                detail::transform_region(e.source, e.map), map_text});
            edges.push_back(std::move(e));
        }
        std::sort(report.gluings.begin(), report.gluings.end(),
                  [](const GlueGluing& a, const GlueGluing& b) {
                      return std::make_pair(a.from, a.to) < std::make_pair(b.from, b.to);
                  });

        // chains of identifications up to length 3
        std::vector<detail::GlueChain> chains;
        std::vector<detail::GlueChain> frontier;
        for (const auto& e : edges) {
            detail::GlueChain c;
            c.from = e.from;
            c.to = e.to;
            c.map = e.map;
            c.constraints = {{Mobius{}, e.source}};
            chains.push_back(c);
            frontier.push_back(std::move(c));
        }
        for (int len = 2; len <= 3; ++len) {
            std::vector<detail::GlueChain> next;
            for (const auto& c : frontier)
                for (const auto& e : edges) {
                    if (e.from != c.to) continue;
                    detail::GlueChain ext = c;
                    ext.to = e.to;
                    ext.constraints.emplace_back(c.map, e.source);
                    ext.map = e.map.after(c.map);
                    next.push_back(std::move(ext));
                }
            for (const auto& c : next) chains.push_back(c);
            frontier = std::move(next);
        }

        auto strictly_inside = [&](const detail::GlueChain& chain, const Cx& z) {
            for (const auto& [prefix, region] : chain.constraints) {
                if (prefix.has_pole_at(z)) return false;
                if (!(region.boundary_distance(prefix.eval(z)) > 0.0)) return false;
            }
            return true;
        };
        auto identified = [&](int a, int b, const Cx& p, const Cx& q) {
            const double scale = std::max({1.0, std::abs(p), std::abs(q)});
            for (const auto& chain : chains) {
                if (chain.from != a || chain.to != b) continue;
                if (!strictly_inside(chain, p)) continue;
                if (chain.map.has_pole_at(p)) continue;
                if (std::abs(chain.map.eval(p) - q) <= 1e-8 * scale) return true;
            }
            return false;
        };

        std::map<std::tuple<int, int, long long, long long, long long, long long>, GlueCandidate>
            unique;
        auto key_of = [](int a, int b, const Cx& p, const Cx& q) {
            auto grid = [](double v) { return static_cast<long long>(std::llround(v * 1e7)); };
            return std::make_tuple(a, b, grid(p.real()), grid(p.imag()), grid(q.real()),
                                   grid(q.imag()));
        };

        for (const auto& chain : chains) {
            for (std::size_t ci = 0; ci < chain.constraints.size(); ++ci) {
                const auto& [prefix, region] = chain.constraints[ci];
                const double delta = detail::boundary_scale(region);
                for (const auto& probe : detail::boundary_probes(region)) {
                    // pull the boundary point back through the prefix map
                    const Mobius back{prefix.d, -prefix.b, -prefix.c, prefix.a};
                    if (back.has_pole_at(probe.point)) continue;
                    const Cx z_limit = back.eval(probe.point);
                    // the limit may sit on several constraint boundaries at
                    // once; it must not be outside any of them
                    bool admissible = true;
                    for (const auto& [pf, rg] : chain.constraints) {
                        if (pf.has_pole_at(z_limit)) {
                            admissible = false;
                            break;
                        }
                        if (rg.boundary_distance(pf.eval(z_limit)) < -1e-9) {
                            admissible = false;
                            break;
                        }
                    }
                    if (!admissible) continue;
                    // dyadic approach: every step must be identified, i.e.
                    // strictly inside the whole chain domain
                    bool sequence_ok = true;
                    for (int s = 1; s <= 10; ++s) {
                        const Cx w = probe.point + probe.inward * (delta * std::pow(0.5, s));
                        if (back.has_pole_at(w)) {
                            sequence_ok = false;
                            break;
                        }
                        if (!strictly_inside(chain, back.eval(w))) {
                            sequence_ok = false;
                            break;
                        }
                    }
                    if (!sequence_ok) continue;
                    if (chain.map.has_pole_at(z_limit)) continue;
                    const Cx q_limit = chain.map.eval(z_limit);
                    const Region& region_a =
                        report.chart_regions[static_cast<std::size_t>(chain.from)].second;
                    const Region& region_b =
                        report.chart_regions[static_cast<std::size_t>(chain.to)].second;
                    if (!(region_a.boundary_distance(z_limit) > 0.0)) continue;
                    if (!(region_b.boundary_distance(q_limit) > 0.0)) continue;
                    if (chain.from == chain.to && std::abs(z_limit - q_limit) <= 1e-9) continue;
                    if (identified(chain.from, chain.to, z_limit, q_limit)) continue;
                    GlueCandidate cand{atlas.charts[static_cast<std::size_t>(chain.from)].name,
                                       atlas.charts[static_cast<std::size_t>(chain.to)].name,
                                       z_limit, q_limit};
                    unique.emplace(key_of(chain.from, chain.to, z_limit, q_limit), std::move(cand));
                }
            }
        }
        for (auto& [key, cand] : unique) report.candidates.push_back(std::move(cand));
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace aholo
