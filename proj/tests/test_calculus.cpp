#include "doctest.h"

#include "aholo/builtin_maps.hpp"
#include "aholo/calculus.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace aholo;

namespace {

MapSpec square_map() {
    PolyMap f(1, 1, 1);
    f.add_term(1, {2}, Algebra(1).unit());
    return MapSpec::from_polynomial(f);
}

AModuleVector scalar_point(double re, double im = 0.0) {
    AModuleVector z(1, 1);
    z[0] = AlgebraElement(std::vector<Cx>{Cx(re, im)});
    return z;
}

}  // namespace

TEST_CASE("derivative of z^2 at 1 is 2") {
    const AModuleVector d =
        cauchy_directional_derivative(square_map(), scalar_point(1.0), scalar_point(1.0));
    CHECK(std::abs(d[0][0] - Cx(2, 0)) <= 1e-13);
}

TEST_CASE("derivative of the truncated exponential at 0 is 1") {
    PolyMap f(1, 1, 1);
    double factorial = 1.0;
    for (int d = 0; d <= 20; ++d) {
        if (d > 0) factorial *= d;
        f.add_term(1, {d}, Cx(1.0 / factorial, 0.0) * Algebra(1).unit());
    }
    const AModuleVector d = cauchy_directional_derivative(MapSpec::from_polynomial(f),
                                                          scalar_point(0.0), scalar_point(1.0), 64);
    CHECK(std::abs(d[0][0] - Cx(1, 0)) <= 1e-12);
}

TEST_CASE("componentwise powers differentiate componentwise") {
    // component 1 sees z^2, component 2 sees z^3
    PolyMap f(1, 1, 2);
    f.add_term(1, {2}, AlgebraElement(std::vector<Cx>{Cx(1, 0), Cx(0, 0)}));
    f.add_term(1, {3}, AlgebraElement(std::vector<Cx>{Cx(0, 0), Cx(1, 0)}));
    AModuleVector z(1, 2), zdot(1, 2);
    z[0] = AlgebraElement(std::vector<Cx>{Cx(1, 0), Cx(2, 0)});
    zdot[0] = AlgebraElement(std::vector<Cx>{Cx(1, 0), Cx(1, 0)});
    const MapSpec spec = MapSpec::from_polynomial(f);
    const AModuleVector d = cauchy_directional_derivative(spec, z, zdot);
    const AModuleVector expected = oracle::symbolic_directional(f, z, zdot);
    CHECK(std::abs(d[0][0] - Cx(2, 0)) <= 1e-12);
    CHECK(std::abs(d[0][1] - Cx(12, 0)) <= 1e-11);
    CHECK(norm(d - expected) <= 1e-11);
}

TEST_CASE("quadrature is exact for random polynomials below the node count") {
    testutil::Rng rng(61);
    for (int rep = 0; rep < 40; ++rep) {
        const int m = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 3);
        const int k = rng.uniform_int(1, 3);
        const PolyMap f = rng.poly(n, k, m, 10, 5);
        const MapSpec spec = MapSpec::from_polynomial(f);
        const AModuleVector z = rng.vec(n, m, 0.2, 1.2);
        const AModuleVector zdot = rng.vec(n, m, 0.2, 1.2);
        const AModuleVector got = cauchy_directional_derivative(spec, z, zdot, 64);
        const AModuleVector want = oracle::symbolic_directional(f, z, zdot);
        CHECK(norm(got - want) <= 1e-12 * std::max(1.0, norm(want)));
    }
}

TEST_CASE("derivative direction map is A-linear for polynomial maps") {
    testutil::Rng rng(62);
    for (int rep = 0; rep < 25; ++rep) {
        const int m = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(n, 2, m, 6);
        const MapSpec spec = MapSpec::from_polynomial(f);
        const AModuleVector z = rng.vec(n, m, 0.2, 1.0);
        const AModuleVector zdot = rng.vec(n, m, 0.2, 1.0);
        const AlgebraElement a = rng.alg(m);
        const AModuleVector lhs = cauchy_directional_derivative(spec, z, a * zdot);
        const AModuleVector rhs = a * cauchy_directional_derivative(spec, z, zdot);
        CHECK(norm(lhs - rhs) <= 1e-11 * std::max(1.0, norm(rhs)));
    }
}

TEST_CASE("frechet matrix of a linear map is the map, of a constant is zero") {
    testutil::Rng rng(63);
    const int m = 2, n = 3, k = 2;
    const ALinearMap F = rng.map(k, n, m);
    const MapSpec spec = MapSpec::from_polynomial(PolyMap::affine(F, rng.vec(k, m)));
    for (int rep = 0; rep < 5; ++rep) {
        const ALinearMap got = frechet_matrix(spec, rng.vec(n, m));
        CHECK(oracle::map_distance(got, F) <= 1e-12);
    }

    PolyMap constant(2, 1, m);
    constant.add_term(1, {0, 0}, rng.alg(m));
    const ALinearMap zero = frechet_matrix(MapSpec::from_polynomial(constant), rng.vec(2, m));
    CHECK(operator_norm(zero) <= 1e-14);
}

TEST_CASE("frechet matrix columns match symbolic partial derivatives") {
    testutil::Rng rng(64);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 3);
        const int k = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(n, k, m, 6);
        const AModuleVector z = rng.vec(n, m, 0.2, 1.0);
        const ALinearMap got = frechet_matrix(MapSpec::from_polynomial(f), z);
        const ALinearMap want = oracle::symbolic_frechet(f, z);
        CHECK(oracle::map_distance(got, want) <= 1e-11 * std::max(1.0, operator_norm(want)));
    }
}

TEST_CASE("frechet matrix reproduces directional derivatives") {
    testutil::Rng rng(65);
    const PolyMap f = rng.poly(2, 2, 2, 5);
    const MapSpec spec = MapSpec::from_polynomial(f);
    const AModuleVector z = rng.vec(2, 2, 0.2, 1.0);
    const ALinearMap df = frechet_matrix(spec, z);
    for (int rep = 0; rep < 10; ++rep) {
        const AModuleVector zdot = rng.vec(2, 2);
        const AModuleVector via_matrix = apply_linear(df, zdot);
        const AModuleVector direct = cauchy_directional_derivative(spec, z, zdot);
        CHECK(norm(via_matrix - direct) <= 1e-11 * std::max(1.0, norm(direct)));
    }
}

TEST_CASE("chain rule through composition") {
    testutil::Rng rng(66);
    for (int rep = 0; rep < 10; ++rep) {
        const int m = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(2, 2, m, 3, 3);
        const PolyMap g = rng.poly(2, 2, m, 3, 3);
        const MapSpec spec_f = MapSpec::from_polynomial(f);
        const MapSpec spec_g = MapSpec::from_polynomial(g);
        const MapSpec composed = MapSpec::from_polynomial(g.compose(f));
        const AModuleVector z = rng.vec(2, m, 0.2, 0.7);
        const ALinearMap lhs = frechet_matrix(composed, z);
        const ALinearMap rhs =
            compose_linear(frechet_matrix(spec_g, spec_f.eval(z)), frechet_matrix(spec_f, z));
        CHECK(oracle::map_distance(lhs, rhs) <= 1e-10 * std::max(1.0, operator_norm(rhs)));
    }
}

TEST_CASE("blackbox doubling converges for analytic maps and rejects jumps") {
    // analytic away from z = 2, evaluated well inside the unit disk
    const DomainDescriptor disk = DomainDescriptor::uniform(1, 1, Region::disk(Cx(0, 0), 1.0));
    const MapSpec analytic = MapSpec::from_function(
        1, 1, 1,
        [](const AModuleVector& z) {
            AModuleVector out(1, 1);
            out[0][0] = std::exp(z[0][0]) / (Cx(2, 0) - z[0][0]);
            return out;
        },
        disk);
    const AModuleVector z0 = scalar_point(0.1, 0.05);
    const AModuleVector d64 = cauchy_directional_derivative(analytic, z0, scalar_point(1.0), 64);
    const AModuleVector d128 = cauchy_directional_derivative(analytic, z0, scalar_point(1.0), 128);
    CHECK(norm(d64 - d128) <= 1e-10);
    // closed-form derivative of e^z / (2 - z)
    const Cx z = z0[0][0];
    const Cx expected =
        std::exp(z) / (Cx(2, 0) - z) + std::exp(z) / ((Cx(2, 0) - z) * (Cx(2, 0) - z));
    CHECK(std::abs(d64[0][0] - expected) <= 1e-10);

    const MapSpec jump = MapSpec::from_function(
        1, 1, 1,
        [](const AModuleVector& z) {
            AModuleVector out(1, 1);
            out[0][0] = z[0][0].real() > 0.05 ? Cx(1, 0) : Cx(0, 0);
            return out;
        },
        disk);
    CHECK_THROWS_AS(cauchy_directional_derivative(jump, z0, scalar_point(1.0)), ConvergenceFailure);
}

TEST_CASE("derivatives refuse maps that fail the holomorphy moment check") {
    testutil::Rng rng(73);
    const AModuleVector z1 = rng.vec(1, 1);
    CHECK_THROWS_AS(cauchy_directional_derivative(make_conjugate(1), z1, scalar_point(1.0)),
                    NonHolomorphic);
    const AModuleVector z2 = rng.vec(1, 2);
    AModuleVector dir2(1, 2);
    dir2[0] = Algebra(2).unit();
    CHECK_THROWS_AS(frechet_matrix(make_real_part(2), z2), NonHolomorphic);
    // the component swap is C-linear, so the moment check has nothing to
    // object to; only the block-structure detector rejects it
    const ALinearMap swapped = frechet_matrix(make_component_swap(2), z2);
    CHECK(operator_norm(swapped) > 0.5);
}

TEST_CASE("boundary rejection") {
    const DomainDescriptor punctured = DomainDescriptor::uniform(1, 1, Region::punctured_plane());
    PolyMap idp(1, 1, 1);
    idp.add_term(1, {1}, Algebra(1).unit());
    const MapSpec spec = MapSpec::from_polynomial(idp, punctured);
    CHECK_THROWS_AS(cauchy_directional_derivative(spec, scalar_point(0.0), scalar_point(1.0)),
                    BoundaryTooClose);
}

TEST_CASE("A-differentiability detector: positive cases") {
    testutil::Rng rng(67);
    for (int rep = 0; rep < 10; ++rep) {
        const int m = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(n, 2, m, 5);
        const MapSpec spec = MapSpec::from_polynomial(f);
        std::vector<AModuleVector> samples;
        for (int s = 0; s < 4; ++s) samples.push_back(rng.vec(n, m, 0.3, 1.2));
        const DiffReport report = is_A_differentiable(spec, samples);
        CHECK(report.a_differentiable);
        CHECK(report.worst_off_diagonal <= 1e-11);
        CHECK(report.worst_antiholomorphic <= 1e-11);
    }
}

TEST_CASE("detector flags the component swap with the right block") {
    testutil::Rng rng(68);
    const MapSpec swap = make_component_swap(2);
    const DiffReport report = is_A_differentiable(swap, {rng.vec(1, 2)});
    CHECK_FALSE(report.a_differentiable);
    CHECK(report.holomorphic);  // swap is C-linear, just not A-linear
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->kind == DiffWitness::Kind::off_diagonal);
    CHECK(report.witness->out_comp != report.witness->in_comp);
    CHECK(report.witness->magnitude > 0.5);
}

TEST_CASE("detector flags conjugation as non-holomorphic") {
    testutil::Rng rng(69);
    const MapSpec conj = make_conjugate(1);
    const DiffReport report = is_A_differentiable(conj, {rng.vec(1, 1)});
    CHECK_FALSE(report.a_differentiable);
    CHECK_FALSE(report.holomorphic);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->kind == DiffWitness::Kind::antiholomorphic);
}

TEST_CASE("detector flags averaging, mixed products, permutations, real part") {
    testutil::Rng rng(70);
    CHECK_FALSE(is_A_differentiable(make_component_average(3), {rng.vec(1, 3)}).a_differentiable);
    CHECK_FALSE(is_A_differentiable(make_mixed_product(2), {rng.vec(1, 2)}).a_differentiable);
    CHECK_FALSE(is_A_differentiable(make_real_part(2), {rng.vec(1, 2)}).holomorphic);
    CHECK_FALSE(
        is_A_differentiable(make_permutation_map(3, {1, 2, 0}), {rng.vec(1, 3)}).a_differentiable);
}

TEST_CASE("second derivative of powers") {
    // f(z) = z^2 has constant second derivative 2
    const AModuleVector d2 = second_derivative(square_map(), scalar_point(0.7, 0.3),
                                               scalar_point(1.0), scalar_point(1.0));
    CHECK(std::abs(d2[0][0] - Cx(2, 0)) <= 1e-11);

    // f(z) = z^3 at 1: second derivative 6
    PolyMap cube(1, 1, 1);
    cube.add_term(1, {3}, Algebra(1).unit());
    const AModuleVector d3 = second_derivative(MapSpec::from_polynomial(cube), scalar_point(1.0),
                                               scalar_point(1.0), scalar_point(1.0));
    CHECK(std::abs(d3[0][0] - Cx(6, 0)) <= 1e-11);
}

TEST_CASE("second derivative is A-linear in the direction argument") {
    testutil::Rng rng(72);
    for (int rep = 0; rep < 5; ++rep) {
        const int m = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(1, 1, m, 4);
        const MapSpec spec = MapSpec::from_polynomial(f);
        const AModuleVector z = rng.vec(1, m, 0.2, 0.8);
        const AModuleVector h = rng.vec(1, m, 0.2, 0.8);
        const AModuleVector zdot = rng.vec(1, m, 0.2, 0.8);
        const AlgebraElement a = rng.alg(m);
        const AModuleVector lhs = second_derivative(spec, z, a * h, zdot);
        const AModuleVector rhs = a * second_derivative(spec, z, h, zdot);
        CHECK(norm(lhs - rhs) <= 1e-10 * std::max(1.0, norm(rhs)));
    }
}

TEST_CASE("second derivative is symmetric and matches finite differences") {
    testutil::Rng rng(71);
    for (int rep = 0; rep < 10; ++rep) {
        const int m = rng.uniform_int(1, 2);
        const int n = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(n, 1, m, 5);
        const MapSpec spec = MapSpec::from_polynomial(f);
        const AModuleVector z = rng.vec(n, m, 0.2, 0.8);
        const AModuleVector h = rng.vec(n, m, 0.2, 0.8);
        const AModuleVector zdot = rng.vec(n, m, 0.2, 0.8);
        const AModuleVector hz = second_derivative(spec, z, h, zdot);
        const AModuleVector zh = second_derivative(spec, z, zdot, h);
        CHECK(norm(hz - zh) <= 1e-10 * std::max(1.0, norm(hz)));
        const AModuleVector fd = oracle::fd_second_derivative(f, z, h, zdot);
        CHECK(norm(hz - fd) <= 1e-6 * std::max(1.0, norm(fd)));
    }
}
