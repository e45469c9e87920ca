#pragma once

/// Atlas presentations of A-manifolds: charts with product-region domains,
/// transitions that are affine, polynomial, or coordinate inversions, and
/// the sample-based verification of the manifold axioms.  Tangent and
/// cotangent-exterior transitions realize the local trivializations of the
/// associated bundles; the cocycle checks are the chain rule and its
/// contravariant mirror.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aholo/calculus.hpp"
#include "aholo/forms.hpp"
#include "aholo/polynomial.hpp"
#include "aholo/region.hpp"
#include "aholo/sampling.hpp"

namespace aholo {

struct Chart {
    std::string name;
    int n = 1;                // A-module rank of the chart codomain
    DomainDescriptor domain;  // open set of A^n
    AModuleVector witness;    // one interior point
};

struct TransitionMap {
    // The on-disk kinds are affine, polynomial, and monomial_inversion;
    // the blackbox kind exists for in-memory atlases only (the validator
    // must be able to reject transitions no holomorphic kind can express).
    enum class Kind { affine, polynomial, monomial_inversion, blackbox };

    std::string from, to;
    DomainDescriptor overlap;  // in from-chart coordinates
    Kind kind = Kind::affine;

    // affine: z -> matrix z + translation
    ALinearMap matrix;
    AModuleVector translation;
    // polynomial
    PolyMap poly;
    // monomial_inversion: z_l -> 1/z_l on these variables (0-based)
    std::vector<int> inverted_vars;
    // blackbox
    std::function<AModuleVector(const AModuleVector&)> custom_fn;

    std::string inverse_name;  // name of the declared inverse transition

    std::string name() const { return from + "->" + to; }

    AModuleVector apply(const AModuleVector& p) const {
        switch (kind) {
            case Kind::affine:
                return apply_linear(matrix, p) + translation;
            case Kind::polynomial:
                return poly.eval(p);
            case Kind::monomial_inversion: {
                AModuleVector q = p;
                for (int l : inverted_vars) q[l] = inverse(p[l]);
                return q;
            }
            case Kind::blackbox:
                return custom_fn(p);
        }
        throw Error("unreachable");
    }

    /// The transition as a holomorphic map spec on its overlap.
    MapSpec as_map_spec(int m) const {
        switch (kind) {
            case Kind::affine:
                return MapSpec::from_polynomial(PolyMap::affine(matrix, translation), overlap);
            case Kind::polynomial:
                return MapSpec::from_polynomial(poly, overlap);
            case Kind::monomial_inversion: {
                auto self = *this;
                return MapSpec::from_function(
                    overlap.vars(), overlap.vars(), m,
                    [self](const AModuleVector& p) { return self.apply(p); }, overlap);
            }
            case Kind::blackbox:
                return MapSpec::from_function(overlap.vars(), overlap.vars(), m, custom_fn, overlap);
        }
        throw Error("unreachable");
    }
};

struct Atlas {
    int m = 1;  // algebra dimension
    int n = 1;  // chart rank (shared by all charts in this artifact)
    std::vector<Chart> charts;
    std::vector<TransitionMap> transitions;
    std::vector<std::array<int, 3>> triples;  // chart indices with a triple overlap

    int chart_index(const std::string& name) const {
        for (std::size_t i = 0; i < charts.size(); ++i)
            if (charts[i].name == name) return static_cast<int>(i);
        throw StructuralError("unknown chart: " + name);
    }

    const TransitionMap* find_transition(const std::string& from, const std::string& to) const {
        for (const auto& t : transitions)
            if (t.from == from && t.to == to) return &t;
        return nullptr;
    }

    const TransitionMap& transition(const std::string& from, const std::string& to) const {
        const TransitionMap* t = find_transition(from, to);
        if (!t) throw StructuralError("no transition " + from + "->" + to);
        return *t;
    }
};

struct TransitionFinding {
    std::string transition;        // "from->to"
    double worst_identity = 0.0;   // forward-then-inverse roundtrip error
    double worst_off_diagonal = 0.0;
    double worst_antiholomorphic = 0.0;
    int samples = 0;
    int image_violations = 0;      // samples whose image left the target chart
    bool non_holomorphic = false;
    bool pass = true;
};

struct TripleFinding {
    std::string label;  // "(i,j,k)" by chart names
    double worst_cocycle = 0.0;
    int samples = 0;
    bool pass = true;
};

struct AtlasReport {
    bool pass = true;
    double tol = 0.0;
    std::vector<TransitionFinding> transitions;
    std::vector<TripleFinding> triples;
};

/// Sample-based verification of the atlas axioms: declared inverses exist,
/// transitions keep their samples in the target chart, every transition is
/// A-differentiable on its overlap, forward-then-inverse is the identity,
/// and listed triple overlaps satisfy the cocycle identity.
inline AtlasReport validate_atlas(const Atlas& atlas, int samples_per_overlap = 64,
                                  double tol = 1e-9, std::uint64_t seed = kDefaultSeed) {
    AtlasReport report;
    report.tol = tol;

    for (const auto& chart : atlas.charts) {
        if (!chart.domain.contains(chart.witness))
            throw StructuralError("chart " + chart.name + " has no interior witness point");
    }

    std::vector<const TransitionMap*> ordered;
    for (const auto& t : atlas.transitions) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const TransitionMap* a, const TransitionMap* b) {
        return std::make_pair(a->from, a->to) < std::make_pair(b->from, b->to);
    });

    const int grid = samples_per_overlap / 2;
    const int random = samples_per_overlap - grid;

    for (const TransitionMap* t : ordered) {
        atlas.chart_index(t->from);
        atlas.chart_index(t->to);
        const TransitionMap* inv = atlas.find_transition(t->to, t->from);
        if (!inv || inv->name() != t->inverse_name)
            throw StructuralError("transition " + t->name() + " lacks its declared inverse");

        TransitionFinding finding;
        finding.transition = t->name();
        const Chart& target = atlas.charts[static_cast<std::size_t>(atlas.chart_index(t->to))];
        const std::vector<AModuleVector> pts = sample_domain(t->overlap, grid, random, seed);
        if (pts.empty()) throw StructuralError("transition " + t->name() + " has an empty overlap");
        finding.samples = static_cast<int>(pts.size());

        const MapSpec spec = t->as_map_spec(atlas.m);
        for (const AModuleVector& p : pts) {
            const AModuleVector q = t->apply(p);
            if (!target.domain.contains(q)) {
                ++finding.image_violations;
                continue;
            }
            finding.worst_identity = std::max(finding.worst_identity, norm(inv->apply(q) - p));
        }
        const DiffReport diff = is_A_differentiable(spec, pts, tol);
        finding.worst_off_diagonal = diff.worst_off_diagonal;
        finding.worst_antiholomorphic = diff.worst_antiholomorphic;
        finding.non_holomorphic = !diff.holomorphic;
        finding.pass = finding.image_violations == 0 && finding.worst_identity <= tol &&
                       diff.a_differentiable;
        report.pass = report.pass && finding.pass;
        report.transitions.push_back(std::move(finding));
    }

    for (const auto& triple : atlas.triples) {
        const Chart& ci = atlas.charts[static_cast<std::size_t>(triple[0])];
        const Chart& cj = atlas.charts[static_cast<std::size_t>(triple[1])];
        const Chart& ck = atlas.charts[static_cast<std::size_t>(triple[2])];
        const TransitionMap& t_ij = atlas.transition(ci.name, cj.name);
        const TransitionMap& t_jk = atlas.transition(cj.name, ck.name);
        const TransitionMap& t_ik = atlas.transition(ci.name, ck.name);

        TripleFinding finding;
        finding.label = "(" + ci.name + "," + cj.name + "," + ck.name + ")";
        const std::vector<AModuleVector> pts =
            sample_domain(t_ij.overlap, samples_per_overlap, samples_per_overlap, seed);
        for (const AModuleVector& p : pts) {
            if (!t_ik.overlap.contains(p)) continue;
            const AModuleVector q = t_ij.apply(p);
            if (!t_jk.overlap.contains(q)) continue;
            finding.worst_cocycle = std::max(finding.worst_cocycle, norm(t_jk.apply(q) - t_ik.apply(p)));
            ++finding.samples;
        }
        if (finding.samples == 0)
            throw StructuralError("triple " + finding.label + " produced no overlap samples");
        finding.pass = finding.worst_cocycle <= tol;
        report.pass = report.pass && finding.pass;
        report.triples.push_back(std::move(finding));
    }

    return report;
}

/// Derivative of the chart transition i -> j at a point p of the overlap
/// (in chart-i coordinates): closed form for affine and inversion
/// transitions, circle quadrature for polynomial ones.
inline ALinearMap tangent_transition(const Atlas& atlas, int i, int j, const AModuleVector& p,
                                     int nodes = kDefaultNodes) {
    const Chart& ci = atlas.charts[static_cast<std::size_t>(i)];
    const Chart& cj = atlas.charts[static_cast<std::size_t>(j)];
    const TransitionMap& t = atlas.transition(ci.name, cj.name);
    if (!t.overlap.contains(p)) throw NotInOverlap("point is outside the overlap of " + t.name());
    switch (t.kind) {
        case TransitionMap::Kind::affine:
            return t.matrix;
        case TransitionMap::Kind::monomial_inversion: {
            std::vector<AlgebraElement> diag(static_cast<std::size_t>(atlas.n),
                                             Algebra(atlas.m).unit());
            for (int l : t.inverted_vars) {
                const AlgebraElement zinv = inverse(p[l]);
                diag[static_cast<std::size_t>(l)] = -(zinv * zinv);
            }
            return ALinearMap::diagonal(diag);
        }
        case TransitionMap::Kind::polynomial:
        case TransitionMap::Kind::blackbox:
            return frechet_matrix(t.as_map_spec(atlas.m), p, nodes);
    }
    throw Error("unreachable");
}

/// Coefficient transport of degree-k antisymmetric forms from chart i to
/// chart j at p: pull back along the derivative of the inverse-direction
/// transition, evaluated at the image point.
struct CotangentTransition {
    ALinearMap back_derivative;  // D(transition j -> i) at the image of p
    int degree = 0;

    AntisymForm apply(const AntisymForm& f) const { return pullback(back_derivative, f); }
};

inline CotangentTransition cotangent_transition(const Atlas& atlas, int i, int j,
                                                const AModuleVector& p, int k,
                                                int nodes = kDefaultNodes) {
    const Chart& ci = atlas.charts[static_cast<std::size_t>(i)];
    const Chart& cj = atlas.charts[static_cast<std::size_t>(j)];
    const TransitionMap& t = atlas.transition(ci.name, cj.name);
    if (!t.overlap.contains(p)) throw NotInOverlap("point is outside the overlap of " + t.name());
    const AModuleVector q = t.apply(p);
    ALinearMap back = tangent_transition(atlas, j, i, q, nodes);
    // surfaces SingularMap early when the derivative cannot be inverted
    inverse_linear(back);
    return CotangentTransition{std::move(back), k};
}

struct GlobalFormReport {
    bool pass = true;
    double worst_transport = 0.0;      // coefficient mismatch across overlaps
    double worst_differentiability = 0.0;
    std::vector<std::string> findings;  // sorted, human-readable failures
};

/// Check that per-chart wedge-coefficient maps glue to a global
/// holomorphic k-form: every coefficient map must be A-differentiable on
/// its chart and transporting the chart-i form to chart j must reproduce
/// the chart-j form on every overlap sample.
inline GlobalFormReport check_global_form(const Atlas& atlas, int k,
                                          const std::map<std::string, PolyMap>& coefficient_maps,
                                          int samples_per_overlap = 32, double tol = 1e-9,
                                          std::uint64_t seed = kDefaultSeed) {
    GlobalFormReport report;
    const long long n_coeffs = wedge_rank(atlas.n, k);
    const std::vector<IndexTuple> tuples = increasing_tuples(atlas.n, k);

    for (const auto& chart : atlas.charts) {
        auto it = coefficient_maps.find(chart.name);
        if (it == coefficient_maps.end())
            throw MissingChartData("no coefficient map for chart " + chart.name);
        const PolyMap& cmap = it->second;
        if (cmap.vars() != atlas.n || cmap.outputs() != static_cast<int>(n_coeffs) ||
            cmap.algebra_dim() != atlas.m)
            throw MissingChartData("coefficient map for chart " + chart.name +
                                   " has the wrong shape");
        const MapSpec spec = MapSpec::from_polynomial(cmap, chart.domain);
        const std::vector<AModuleVector> pts =
            sample_domain(chart.domain, samples_per_overlap / 2,
                          samples_per_overlap - samples_per_overlap / 2, seed);
        const DiffReport diff = is_A_differentiable(spec, pts, tol);
        report.worst_differentiability = std::max(
            report.worst_differentiability,
            std::max(diff.worst_off_diagonal, diff.worst_antiholomorphic));
        if (!diff.a_differentiable) {
            report.pass = false;
            report.findings.push_back("chart " + chart.name +
                                      ": coefficient map is not A-differentiable");
        }
    }

    auto form_at = [&](const PolyMap& cmap, const AModuleVector& p) {
        const AModuleVector coeffs = cmap.eval(p);
        AntisymForm f(atlas.n, k, atlas.m);
        for (std::size_t t = 0; t < tuples.size(); ++t) f.set(tuples[t], coeffs[static_cast<int>(t)]);
        return f;
    };

    std::vector<const TransitionMap*> ordered;
    for (const auto& t : atlas.transitions) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const TransitionMap* a, const TransitionMap* b) {
        return std::make_pair(a->from, a->to) < std::make_pair(b->from, b->to);
    });

    for (const TransitionMap* t : ordered) {
        const int i = atlas.chart_index(t->from);
        const int j = atlas.chart_index(t->to);
        const std::vector<AModuleVector> pts = sample_domain(
            t->overlap, samples_per_overlap / 2, samples_per_overlap - samples_per_overlap / 2, seed);
        double worst = 0.0;
        for (const AModuleVector& p : pts) {
            const AModuleVector q = t->apply(p);
            const AntisymForm fi = form_at(coefficient_maps.at(t->from), p);
            const AntisymForm fj = form_at(coefficient_maps.at(t->to), q);
            const AntisymForm transported = cotangent_transition(atlas, i, j, p, k).apply(fi);
            worst = std::max(worst, norm_coeffs(transported - fj));
        }
        report.worst_transport = std::max(report.worst_transport, worst);
        if (worst > tol) {
            report.pass = false;
            report.findings.push_back("overlap " + t->name() + ": form transport mismatch " +
                                      std::to_string(worst));
        }
    }
    std::sort(report.findings.begin(), report.findings.end());
    return report;
}

/// The four-chart manifold over A = C^2 with rank 1: two charts see a full
/// plane times a half plane, two see a unit disk times a full plane, and
/// all transitions are translations by algebra constants.  Requires
/// 0 < c1 < c2.
inline Atlas build_manifold_N(double c1, double c2) {
    if (!(0.0 < c1 && c1 < c2)) throw BadParameters("manifold N needs 0 < c1 < c2");
    const int m = 2;
    Atlas atlas;
    atlas.m = m;
    atlas.n = 1;

    auto domain1 = [&](Region comp1, Region comp2) {
        DomainDescriptor d(1, m);
        d.regions[0][0] = comp1;
        d.regions[0][1] = comp2;
        return d;
    };
    auto point = [&](Cx a, Cx b) {
        AModuleVector p(1, m);
        p[0] = AlgebraElement(std::vector<Cx>{a, b});
        return p;
    };

    atlas.charts.push_back(Chart{"W1", 1,
                                 domain1(Region::full_plane(), Region::half_plane_im_gt(0.0)),
                                 point(Cx(0, 0), Cx(0, 1))});
    atlas.charts.push_back(Chart{"W2", 1,
                                 domain1(Region::full_plane(), Region::half_plane_im_lt(0.0)),
                                 point(Cx(0, 0), Cx(0, -1))});
    atlas.charts.push_back(Chart{"W3", 1, domain1(Region::disk(Cx(0, 0), 1.0), Region::full_plane()),
                                 point(Cx(0, 0), Cx(0, 0))});
    atlas.charts.push_back(Chart{"W4", 1, domain1(Region::disk(Cx(0, 0), 1.0), Region::full_plane()),
                                 point(Cx(0, 0), Cx(0, 0))});

    auto translation = [&](const std::string& from, const std::string& to,
                           DomainDescriptor overlap, Cx shift1, Cx shift2) {
        TransitionMap t;
        t.from = from;
        t.to = to;
        t.overlap = std::move(overlap);
        t.kind = TransitionMap::Kind::affine;
        t.matrix = ALinearMap::identity(1, m);
        t.translation = point(shift1, shift2);
        t.inverse_name = to + "->" + from;
        return t;
    };

    // overlap regions in the source chart's coordinates, and their images
    const Region disk0 = Region::disk(Cx(0, 0), 1.0);
    // W3 -> W1: disk x {Im > c1}, shift (+2, -i c1)
    atlas.transitions.push_back(translation("W3", "W1",
                                            domain1(disk0, Region::half_plane_im_gt(c1)),
                                            Cx(2, 0), Cx(0, -c1)));
    atlas.transitions.push_back(translation("W1", "W3",
                                            domain1(Region::disk(Cx(2, 0), 1.0),
                                                    Region::half_plane_im_gt(0.0)),
                                            Cx(-2, 0), Cx(0, c1)));
    // W4 -> W1: disk x {Im > c2}, shift (-2, -i c2)
    atlas.transitions.push_back(translation("W4", "W1",
                                            domain1(disk0, Region::half_plane_im_gt(c2)),
                                            Cx(-2, 0), Cx(0, -c2)));
    atlas.transitions.push_back(translation("W1", "W4",
                                            domain1(Region::disk(Cx(-2, 0), 1.0),
                                                    Region::half_plane_im_gt(0.0)),
                                            Cx(2, 0), Cx(0, c2)));
    // W3 -> W2: disk x {Im < -c1}, shift (+2, +i c1)
    atlas.transitions.push_back(translation("W3", "W2",
                                            domain1(disk0, Region::half_plane_im_lt(-c1)),
                                            Cx(2, 0), Cx(0, c1)));
    atlas.transitions.push_back(translation("W2", "W3",
                                            domain1(Region::disk(Cx(2, 0), 1.0),
                                                    Region::half_plane_im_lt(0.0)),
                                            Cx(-2, 0), Cx(0, -c1)));
    // W4 -> W2: disk x {Im < -c2}, shift (-2, +i c2)
    atlas.transitions.push_back(translation("W4", "W2",
                                            domain1(disk0, Region::half_plane_im_lt(-c2)),
                                            Cx(-2, 0), Cx(0, c2)));
    atlas.transitions.push_back(translation("W2", "W4",
                                            domain1(Region::disk(Cx(-2, 0), 1.0),
                                                    Region::half_plane_im_lt(0.0)),
                                            Cx(2, 0), Cx(0, -c2)));
    // W1/W2 and W3/W4 are disjoint, so there are no triple overlaps
    return atlas;
}

/// Two charts glued by coordinate inversion over the punctured plane, for
/// any algebra dimension m: the projective-line model feeding the Cech
/// module.
inline Atlas build_projective_line(int m) {
    if (m < 1) throw BadParameters("algebra dimension must be >= 1");
    Atlas atlas;
    atlas.m = m;
    atlas.n = 1;
    const Algebra alg(m);

    AModuleVector w0(1, m);
    w0[0] = alg.zero();
    atlas.charts.push_back(Chart{"U0", 1, DomainDescriptor::full(1, m), w0});
    atlas.charts.push_back(Chart{"U1", 1, DomainDescriptor::full(1, m), w0});

    auto inversion = [&](const std::string& from, const std::string& to) {
        TransitionMap t;
        t.from = from;
        t.to = to;
        t.overlap = DomainDescriptor::uniform(1, m, Region::punctured_plane());
        t.kind = TransitionMap::Kind::monomial_inversion;
        t.inverted_vars = {0};
        t.inverse_name = to + "->" + from;
        return t;
    };
    atlas.transitions.push_back(inversion("U0", "U1"));
    atlas.transitions.push_back(inversion("U1", "U0"));
    return atlas;
}

}  // namespace aholo
