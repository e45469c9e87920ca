#pragma once

/// Numerical differentiation of A-holomorphic maps by circle averages.
/// The first derivative in direction u comes from the moment
///   (Df)_z(u) = (1/2pi) Int e^{-i theta} f(z + e^{i theta} u) d theta / |scaling|
/// evaluated with the uniform trapezoid rule, which is exact for
/// polynomials of degree below the node count and spectrally accurate for
/// analytic maps.  The same pass yields the e^{+i theta} moment, whose
/// non-vanishing flags maps that are merely R-differentiable.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aholo/algebra.hpp"
#include "aholo/errors.hpp"
#include "aholo/linear.hpp"
#include "aholo/polynomial.hpp"
#include "aholo/region.hpp"

namespace aholo {

inline constexpr int kDefaultNodes = 64;
inline constexpr int kMaxNodes = 4096;
inline constexpr double kDoublingTol = 1e-10;
inline constexpr double kDefaultVerdictTol = 1e-9;

/// A concrete holomorphic map A^n -> A^k: either a polynomial with A
/// coefficients or an arbitrary evaluation procedure with a declared domain.
class MapSpec {
  public:
    enum class Kind { polynomial, blackbox };

    static MapSpec from_polynomial(PolyMap poly) {
        MapSpec f;
        f.kind_ = Kind::polynomial;
        f.n_ = poly.vars();
        f.k_ = poly.outputs();
        f.m_ = poly.algebra_dim();
        f.domain_ = DomainDescriptor::full(f.n_, f.m_);
        f.poly_ = std::move(poly);
        return f;
    }

    static MapSpec from_polynomial(PolyMap poly, DomainDescriptor domain) {
        MapSpec f = from_polynomial(std::move(poly));
        f.domain_ = std::move(domain);
        return f;
    }

    static MapSpec from_function(int n, int k, int m,
                                 std::function<AModuleVector(const AModuleVector&)> fn,
                                 DomainDescriptor domain) {
        MapSpec f;
        f.kind_ = Kind::blackbox;
        f.n_ = n;
        f.k_ = k;
        f.m_ = m;
        f.fn_ = std::move(fn);
        f.domain_ = std::move(domain);
        return f;
    }

    Kind kind() const { return kind_; }
    int vars() const { return n_; }
    int outputs() const { return k_; }
    int algebra_dim() const { return m_; }
    const DomainDescriptor& domain() const { return domain_; }
    const PolyMap& polynomial() const {
        if (kind_ != Kind::polynomial) throw BadParameters("map spec is not polynomial");
        return poly_;
    }

    AModuleVector eval(const AModuleVector& z) const {
        return kind_ == Kind::polynomial ? poly_.eval(z) : fn_(z);
    }

  private:
    Kind kind_ = Kind::polynomial;
    int n_ = 0, k_ = 0, m_ = 1;
    DomainDescriptor domain_;
    PolyMap poly_;
    std::function<AModuleVector(const AModuleVector&)> fn_;
};

namespace detail {

struct KahanCx {
    Cx sum{0.0, 0.0};
    Cx comp{0.0, 0.0};
    void add(const Cx& v) {
        const Cx y = v - comp;
        const Cx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct CircleMoments {
    AModuleVector minus;  // (1/N) sum e^{-i theta} f(...)
    AModuleVector plus;   // (1/N) sum e^{+i theta} f(...)
};

/// One trapezoid pass over the circle z + e^{i theta} u, fixed summation
/// order with compensated accumulation.
inline CircleMoments circle_moments(const MapSpec& f, const AModuleVector& z,
                                    const AModuleVector& u, int nodes) {
    const int k = f.outputs();
    const int m = f.algebra_dim();
    std::vector<KahanCx> acc_minus(static_cast<std::size_t>(k) * static_cast<std::size_t>(m));
    std::vector<KahanCx> acc_plus(acc_minus.size());
    for (int t = 0; t < nodes; ++t) {
        const double theta = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(nodes);
        const Cx w(std::cos(theta), std::sin(theta));
        const AModuleVector p = z + w * u;
        if (!f.domain().contains(p))
            throw DomainViolation("quadrature node left the map's domain");
        const AModuleVector val = f.eval(p);
        const Cx wm = std::conj(w);
        for (int o = 0; o < k; ++o)
            for (int j = 0; j < m; ++j) {
                acc_minus[static_cast<std::size_t>(o * m + j)].add(wm * val[o][j]);
                acc_plus[static_cast<std::size_t>(o * m + j)].add(w * val[o][j]);
            }
    }
    CircleMoments out{AModuleVector(k, m), AModuleVector(k, m)};
    const double inv_n = 1.0 / static_cast<double>(nodes);
    for (int o = 0; o < k; ++o)
        for (int j = 0; j < m; ++j) {
            out.minus[o][j] = acc_minus[static_cast<std::size_t>(o * m + j)].sum * inv_n;
            out.plus[o][j] = acc_plus[static_cast<std::size_t>(o * m + j)].sum * inv_n;
        }
    return out;
}

/// Evaluation radius at z for a direction of module norm `dir_norm`.
/// The circle keeps a factor-2 margin inside the domain; on unbounded
/// domains the distance cap alone would put quadrature nodes absurdly far
/// out and destroy the conditioning of the moment sum, so the radius is
/// additionally capped at the local coordinate scale.
inline double evaluation_radius(const MapSpec& f, const AModuleVector& z) {
    const double dist = f.domain().boundary_distance(z);
    if (dist <= 0.0)
        throw BoundaryTooClose("point is not strictly interior to the map's domain");
    return std::min(dist, 2.0 * (1.0 + norm(z))) / 2.0;
}

inline int polynomial_nodes(const MapSpec& f, int nodes) {
    // exact first moment needs N > degree - 1; clean e^{+i theta} moment
    // needs N > degree + 1
    return std::max(nodes, f.polynomial().total_degree() + 2);
}

template <typename Compute>
AModuleVector with_doubling(const MapSpec& f, int start_nodes, Compute&& compute) {
    if (f.kind() == MapSpec::Kind::polynomial) return compute(polynomial_nodes(f, start_nodes));
    int nodes = std::max(start_nodes, 8);
    AModuleVector prev = compute(nodes);
    while (2 * nodes <= kMaxNodes) {
        nodes *= 2;
        AModuleVector next = compute(nodes);
        if (norm(next - prev) <= kDoublingTol) return next;
        prev = next;
    }
    throw ConvergenceFailure("circle quadrature did not stabilize below " +
                             std::to_string(kMaxNodes) + " nodes");
}

}  // namespace detail

/// Directional derivative (Df)_z(zdot) by the circle average, with the
/// contraction constant C chosen so the evaluation circle stays a factor 2
/// inside the domain.  The same pass yields the opposite-frequency moment,
/// which vanishes for holomorphic maps; once the quadrature has converged,
/// a surviving conjugate moment means the map is at best R-differentiable
/// and the derivative is refused.
inline AModuleVector cauchy_directional_derivative(const MapSpec& f, const AModuleVector& z,
                                                   const AModuleVector& zdot,
                                                   int nodes = kDefaultNodes) {
    if (z.rank() != f.vars() || zdot.rank() != f.vars())
        throw RankMismatch("derivative point/direction rank mismatch");
    const double radius = detail::evaluation_radius(f, z);
    const double dn = norm(zdot);
    if (dn == 0.0) return AModuleVector(f.outputs(), f.algebra_dim());
    const double contraction = dn / radius;  // u = zdot / C has module norm `radius`
    const AModuleVector u = Cx(1.0 / contraction, 0.0) * zdot;

    detail::CircleMoments moments{AModuleVector(f.outputs(), f.algebra_dim()),
                                  AModuleVector(f.outputs(), f.algebra_dim())};
    if (f.kind() == MapSpec::Kind::polynomial) {
        moments = detail::circle_moments(f, z, u, detail::polynomial_nodes(f, nodes));
    } else {
        int n_nodes = std::max(nodes, 8);
        moments = detail::circle_moments(f, z, u, n_nodes);
        while (true) {
            if (2 * n_nodes > kMaxNodes)
                throw ConvergenceFailure("circle quadrature did not stabilize below " +
                                         std::to_string(kMaxNodes) + " nodes");
            const detail::CircleMoments next = detail::circle_moments(f, z, u, 2 * n_nodes);
            const bool settled = norm(next.minus - moments.minus) <= kDoublingTol;
            moments = next;
            if (settled) break;
            n_nodes *= 2;
        }
    }
    const double scale = std::max(1.0, contraction * norm(moments.minus));
    if (contraction * norm(moments.plus) > 1e-6 * scale)
        throw NonHolomorphic("conjugate-frequency moment survives the circle average");
    return Cx(contraction, 0.0) * moments.minus;
}

/// Matrix of the Frechet derivative at z, column l the derivative along
/// e_l * 1_A.  Faithful to directional derivatives whenever f is actually
/// A-differentiable; run the detector first when in doubt.
inline ALinearMap frechet_matrix(const MapSpec& f, const AModuleVector& z,
                                 int nodes = kDefaultNodes) {
    ALinearMap out(f.outputs(), f.vars(), f.algebra_dim());
    for (int l = 0; l < f.vars(); ++l) {
        const AModuleVector col =
            cauchy_directional_derivative(f, z, AModuleVector::basis(f.vars(), f.algebra_dim(), l), nodes);
        for (int o = 0; o < f.outputs(); ++o) out.at(o, l) = col[o];
    }
    return out;
}

/// Full complex Jacobian of f at z: the derivative of every output
/// coordinate-component with respect to every input coordinate-component,
/// together with the conjugate-direction coefficient that must vanish for
/// C-differentiability.
struct ComplexJacobian {
    int n = 0, k = 0, m = 0;
    std::vector<Cx> d;     // [(o,j),(l,jp)] row-major
    std::vector<Cx> dbar;  // same layout

    const Cx& deriv(int o, int j, int l, int jp) const {
        return d[idx(o, j, l, jp)];
    }
    const Cx& anti(int o, int j, int l, int jp) const { return dbar[idx(o, j, l, jp)]; }

    std::size_t idx(int o, int j, int l, int jp) const {
        return (static_cast<std::size_t>(o * m + j) * static_cast<std::size_t>(n * m)) +
               static_cast<std::size_t>(l * m + jp);
    }
};

inline ComplexJacobian complex_jacobian(const MapSpec& f, const AModuleVector& z,
                                        int nodes = kDefaultNodes) {
    ComplexJacobian jac;
    jac.n = f.vars();
    jac.k = f.outputs();
    jac.m = f.algebra_dim();
    jac.d.assign(static_cast<std::size_t>(jac.k * jac.m) * static_cast<std::size_t>(jac.n * jac.m),
                 Cx{0.0, 0.0});
    jac.dbar = jac.d;
    const double radius = detail::evaluation_radius(f, z);
    for (int l = 0; l < jac.n; ++l)
        for (int jp = 0; jp < jac.m; ++jp) {
            // perturb one complex coordinate: component jp of variable l
            AModuleVector dir(jac.n, jac.m);
            dir[l] = Algebra(jac.m).indicator(jp);
            const AModuleVector u = Cx(radius, 0.0) * dir;
            detail::CircleMoments moments{AModuleVector(jac.k, jac.m), AModuleVector(jac.k, jac.m)};
            if (f.kind() == MapSpec::Kind::polynomial) {
                moments = detail::circle_moments(f, z, u, detail::polynomial_nodes(f, nodes));
            } else {
                int n_nodes = std::max(nodes, 8);
                moments = detail::circle_moments(f, z, u, n_nodes);
                while (true) {
                    if (2 * n_nodes > kMaxNodes)
                        throw ConvergenceFailure("Jacobian quadrature did not stabilize");
                    detail::CircleMoments next = detail::circle_moments(f, z, u, 2 * n_nodes);
                    if (norm(next.minus - moments.minus) <= kDoublingTol &&
                        norm(next.plus - moments.plus) <= kDoublingTol) {
                        moments = next;
                        break;
                    }
                    moments = next;
                    n_nodes *= 2;
                }
            }
            for (int o = 0; o < jac.k; ++o)
                for (int j = 0; j < jac.m; ++j) {
                    jac.d[jac.idx(o, j, l, jp)] = moments.minus[o][j] / radius;
                    jac.dbar[jac.idx(o, j, l, jp)] = moments.plus[o][j] / radius;
                }
        }
    return jac;
}

struct DiffWitness {
    enum class Kind { off_diagonal, antiholomorphic };
    Kind kind = Kind::off_diagonal;
    int sample = 0;
    int out_coord = 0, out_comp = 0;  // 0-based
    int in_var = 0, in_comp = 0;
    double magnitude = 0.0;  // relative to the sample's Jacobian scale
};

struct DiffReport {
    bool a_differentiable = false;
    bool holomorphic = false;
    double worst_off_diagonal = 0.0;     // normalized violations
    double worst_antiholomorphic = 0.0;
    double tol = kDefaultVerdictTol;
    int samples_checked = 0;
    std::optional<DiffWitness> witness;
};

/// Decide A-differentiability on a sample set.  Over A = C^m the Frechet
/// derivative is A-linear exactly when the complex Jacobian is block
/// diagonal across Gelfand components, so the check is: (i) every
/// coordinate is C-holomorphic (conjugate moment vanishes), (ii) every
/// cross-component entry vanishes.
inline DiffReport is_A_differentiable(const MapSpec& f, const std::vector<AModuleVector>& samples,
                                      double tol = kDefaultVerdictTol, int nodes = kDefaultNodes) {
    DiffReport report;
    report.tol = tol;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const AModuleVector& z = samples[s];
        if (!f.domain().contains(z)) throw DomainViolation("detector sample outside the domain");
        const ComplexJacobian jac = complex_jacobian(f, z, nodes);
        double scale = 1.0;
        for (const Cx& v : jac.d) scale = std::max(scale, std::abs(v));
        auto consider = [&](DiffWitness::Kind kind, double magnitude, int o, int j, int l, int jp) {
            double& worst = (kind == DiffWitness::Kind::off_diagonal) ? report.worst_off_diagonal
                                                                      : report.worst_antiholomorphic;
            worst = std::max(worst, magnitude);
            if (magnitude > tol && (!report.witness || magnitude > report.witness->magnitude))
                report.witness =
                    DiffWitness{kind, static_cast<int>(s), o, j, l, jp, magnitude};
        };
        for (int o = 0; o < jac.k; ++o)
            for (int j = 0; j < jac.m; ++j)
                for (int l = 0; l < jac.n; ++l)
                    for (int jp = 0; jp < jac.m; ++jp) {
                        consider(DiffWitness::Kind::antiholomorphic,
                                 std::abs(jac.anti(o, j, l, jp)) / scale, o, j, l, jp);
                        if (j != jp)
                            consider(DiffWitness::Kind::off_diagonal,
                                     std::abs(jac.deriv(o, j, l, jp)) / scale, o, j, l, jp);
                    }
        ++report.samples_checked;
    }
    report.holomorphic = report.worst_antiholomorphic <= tol;
    report.a_differentiable = report.holomorphic && report.worst_off_diagonal <= tol;
    return report;
}

/// Second derivative ((D(Df))_{z0}(h))(zdot0): a circle average of first
/// derivatives around z0 in the zdot0 direction, contracted to stay inside
/// the domain.
inline AModuleVector second_derivative(const MapSpec& f, const AModuleVector& z0,
                                       const AModuleVector& h, const AModuleVector& zdot0,
                                       int nodes = kDefaultNodes) {
    const double eps = f.domain().boundary_distance(z0);
    if (eps <= 0.0) throw BoundaryTooClose("second derivative needs a strictly interior point");
    const double r = 1.0 / (1.0 + norm(zdot0) / std::min(eps, kDistanceCap));
    if (norm(zdot0) == 0.0) return AModuleVector(f.outputs(), f.algebra_dim());

    auto outer = [&](int n_nodes) {
        const int k = f.outputs();
        const int m = f.algebra_dim();
        std::vector<detail::KahanCx> acc(static_cast<std::size_t>(k) * static_cast<std::size_t>(m));
        for (int t = 0; t < n_nodes; ++t) {
            const double theta = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(n_nodes);
            const Cx w(std::cos(theta), std::sin(theta));
            const AModuleVector zt = z0 + (w * Cx(r, 0.0)) * zdot0;
            const AModuleVector df = cauchy_directional_derivative(f, zt, h, nodes);
            const Cx wm = std::conj(w);
            for (int o = 0; o < k; ++o)
                for (int j = 0; j < m; ++j)
                    acc[static_cast<std::size_t>(o * m + j)].add(wm * df[o][j]);
        }
        AModuleVector out(k, m);
        for (int o = 0; o < k; ++o)
            for (int j = 0; j < m; ++j)
                out[o][j] = acc[static_cast<std::size_t>(o * m + j)].sum /
                            (static_cast<double>(n_nodes) * r);
        return out;
    };
    return detail::with_doubling(f, nodes, outer);
}

struct LocalityReport {
    bool hypothesis_ok = false;   // F' is A-linear along the whole segment
    bool locality_checked = false;
    bool locality_ok = false;
    double deviation = 0.0;       // |F(u0)(x) - F(u1)(x)| when checked
    double worst_violation = 0.0;
    std::optional<DiffWitness> witness;
    std::optional<double> witness_t;
};

/// Pointwise-locality test for maps F : A^n -> A on the finite set X:
/// when F' is A-linear along the segment [u0, u1] and the inputs agree at
/// the point x of X, the outputs must agree at x as well.  The derivative
/// hypothesis is checked at quadrature samples of the segment integral;
/// failures are reported as hypothesis failures and the locality
/// conclusion is then not asserted at all.
inline LocalityReport check_pointwise_locality(const MapSpec& f, const AModuleVector& u0,
                                               const AModuleVector& u1, int x,
                                               double tol = kDefaultVerdictTol,
                                               int nodes = kDefaultNodes) {
    if (f.outputs() != 1) throw BadParameters("locality check expects a map into A (k = 1)");
    if (x < 0 || x >= f.algebra_dim()) throw BadParameters("component index out of range");
    if (!f.domain().contains(u0) || !f.domain().contains(u1))
        throw DomainViolation("locality endpoints must lie in the domain");
    double agree_scale = 1.0;
    for (int l = 0; l < f.vars(); ++l)
        agree_scale = std::max({agree_scale, std::abs(u0[l][x]), std::abs(u1[l][x])});
    for (int l = 0; l < f.vars(); ++l)
        if (std::abs(u0[l][x] - u1[l][x]) > 1e-12 * agree_scale)
            throw BadParameters("inputs do not agree at component " + std::to_string(x));

    LocalityReport report;
    report.hypothesis_ok = true;
    constexpr int segment_samples = 9;
    for (int i = 0; i < segment_samples; ++i) {
        const double t = static_cast<double>(i) / (segment_samples - 1);
        AModuleVector ut(f.vars(), f.algebra_dim());
        for (int l = 0; l < f.vars(); ++l) ut[l] = Cx(1.0 - t, 0.0) * u0[l] + Cx(t, 0.0) * u1[l];
        if (!f.domain().contains(ut))
            throw DomainViolation("segment between the inputs leaves the domain");
        const DiffReport diff = is_A_differentiable(f, {ut}, tol, nodes);
        const double violation = std::max(diff.worst_off_diagonal, diff.worst_antiholomorphic);
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            if (diff.witness) {
                report.witness = diff.witness;
                report.witness_t = t;
            }
        }
        if (!diff.a_differentiable) report.hypothesis_ok = false;
    }
    if (report.hypothesis_ok) {
        report.locality_checked = true;
        report.deviation = std::abs(f.eval(u0)[0][x] - f.eval(u1)[0][x]);
        report.locality_ok = report.deviation <= tol;
    }
    return report;
}

}  // namespace aholo
