#pragma once

/// Named specimen maps A -> A that exercise the differentiability
/// detector.  None of them is expressible as a polynomial with A
/// coefficients: they couple Gelfand components or depend on conjugates,
/// which is exactly what the detector must flag.

#include <numeric>
#include <string>
#include <vector>

#include "aholo/calculus.hpp"

namespace aholo {

/// u -> (u_{perm[0]}, u_{perm[1]}, ...); A-linear only for the identity.
inline MapSpec make_permutation_map(int m, std::vector<int> perm) {
    if (static_cast<int>(perm.size()) != m) throw BadParameters("permutation has wrong length");
    return MapSpec::from_function(
        1, 1, m,
        [m, perm](const AModuleVector& u) {
            AModuleVector out(1, m);
            for (int j = 0; j < m; ++j) out[0][j] = u[0][perm[static_cast<std::size_t>(j)]];
            return out;
        },
        DomainDescriptor::full(1, m));
}

/// Swap of the first two components.
inline MapSpec make_component_swap(int m) {
    if (m < 2) throw BadParameters("component swap needs m >= 2");
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[1]);
    return make_permutation_map(m, std::move(perm));
}

/// u -> ((1/m) sum_j u_j) * 1_A: rank-one coupling of all components.
inline MapSpec make_component_average(int m) {
    return MapSpec::from_function(
        1, 1, m,
        [m](const AModuleVector& u) {
            Cx s{0.0, 0.0};
            for (int j = 0; j < m; ++j) s += u[0][j];
            AModuleVector out(1, m);
            for (int j = 0; j < m; ++j) out[0][j] = s / static_cast<double>(m);
            return out;
        },
        DomainDescriptor::full(1, m));
}

/// Componentwise complex conjugation: R-differentiable, not C-differentiable.
inline MapSpec make_conjugate(int m) {
    return MapSpec::from_function(
        1, 1, m,
        [m](const AModuleVector& u) {
            AModuleVector out(1, m);
            for (int j = 0; j < m; ++j) out[0][j] = std::conj(u[0][j]);
            return out;
        },
        DomainDescriptor::full(1, m));
}

/// Componentwise real part.
inline MapSpec make_real_part(int m) {
    return MapSpec::from_function(
        1, 1, m,
        [m](const AModuleVector& u) {
            AModuleVector out(1, m);
            for (int j = 0; j < m; ++j) out[0][j] = Cx(u[0][j].real(), 0.0);
            return out;
        },
        DomainDescriptor::full(1, m));
}

/// First output component is the product of components 1 and 2 of the
/// input; holomorphic per coordinate but couples components.
inline MapSpec make_mixed_product(int m) {
    if (m < 2) throw BadParameters("mixed product needs m >= 2");
    return MapSpec::from_function(
        1, 1, m,
        [m](const AModuleVector& u) {
            AModuleVector out(1, m);
            out[0][0] = u[0][0] * u[0][1];
            for (int j = 1; j < m; ++j) out[0][j] = u[0][j];
            return out;
        },
        DomainDescriptor::full(1, m));
}

inline MapSpec make_builtin_map(const std::string& name, int m, const std::vector<int>& perm = {}) {
    if (name == "component_swap") return make_component_swap(m);
    if (name == "component_average") return make_component_average(m);
    if (name == "conjugate") return make_conjugate(m);
    if (name == "real_part") return make_real_part(m);
    if (name == "mixed_product") return make_mixed_product(m);
    if (name == "permutation") return make_permutation_map(m, perm);
    throw ParseError("unknown builtin map: " + name);
}

}  // namespace aholo
