#include "doctest.h"

#include "aholo/builtin_maps.hpp"
#include "aholo/calculus.hpp"

#include "helpers.hpp"

using namespace aholo;

namespace {

AModuleVector components(std::vector<Cx> values) {
    AModuleVector u(1, static_cast<int>(values.size()));
    u[0] = AlgebraElement(std::move(values));
    return u;
}

}  // namespace

TEST_CASE("pointwise squaring is local") {
    // F(u)(x) = u(x)^2 on three points; inputs agree at x = 0
    PolyMap sq(1, 1, 3);
    sq.add_term(1, {2}, Algebra(3).unit());
    const MapSpec spec = MapSpec::from_polynomial(sq);
    const AModuleVector u0 = components({Cx(1, 0), Cx(2, 0), Cx(3, 0)});
    const AModuleVector u1 = components({Cx(1, 0), Cx(5, 0), Cx(7, 0)});
    const LocalityReport report = check_pointwise_locality(spec, u0, u1, 0, 1e-9);
    CHECK(report.hypothesis_ok);
    CHECK(report.locality_checked);
    CHECK(report.locality_ok);
    CHECK(report.deviation <= 1e-12);
}

TEST_CASE("random pointwise polynomials are local at every agreeing component") {
    testutil::Rng rng(81);
    for (int rep = 0; rep < 10; ++rep) {
        const int m = rng.uniform_int(2, 5);
        const int n = rng.uniform_int(1, 2);
        const PolyMap f = rng.poly(n, 1, m, 4);
        const MapSpec spec = MapSpec::from_polynomial(f);
        const int x = rng.uniform_int(0, m - 1);
        AModuleVector u0 = rng.vec(n, m);
        AModuleVector u1 = rng.vec(n, m);
        for (int l = 0; l < n; ++l) u1[l][x] = u0[l][x];
        const LocalityReport report = check_pointwise_locality(spec, u0, u1, x, 1e-9);
        CHECK(report.hypothesis_ok);
        CHECK(report.locality_ok);
        CHECK(report.deviation <= 1e-10);
    }
}

TEST_CASE("a permutation map fails the hypothesis, not locality") {
    const MapSpec perm = make_permutation_map(3, {1, 2, 0});
    const AModuleVector u0 = components({Cx(1, 0), Cx(2, 0), Cx(3, 0)});
    const AModuleVector u1 = components({Cx(1, 0), Cx(5, 0), Cx(7, 0)});
    const LocalityReport report = check_pointwise_locality(perm, u0, u1, 0, 1e-9);
    CHECK_FALSE(report.hypothesis_ok);
    CHECK_FALSE(report.locality_checked);  // never blamed on locality itself
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->kind == DiffWitness::Kind::off_diagonal);
}

TEST_CASE("component averaging fails the hypothesis") {
    const MapSpec avg = make_component_average(3);
    const AModuleVector u0 = components({Cx(1, 0), Cx(2, 0), Cx(3, 0)});
    const AModuleVector u1 = components({Cx(1, 0), Cx(4, 0), Cx(-2, 0)});
    const LocalityReport report = check_pointwise_locality(avg, u0, u1, 0, 1e-9);
    CHECK_FALSE(report.hypothesis_ok);
    CHECK_FALSE(report.locality_checked);
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->out_comp != report.witness->in_comp);
}

TEST_CASE("a segment that leaves the domain is a domain violation") {
    // endpoints agree at component 0 but sit on opposite sides of the
    // annulus hole in component 1, so the segment crosses out of the domain
    PolyMap idp(1, 1, 2);
    idp.add_term(1, {1}, Algebra(2).unit());
    const MapSpec spec = MapSpec::from_polynomial(
        idp, DomainDescriptor::uniform(1, 2, Region::annulus(0.5, 3.0)));
    AModuleVector v0(1, 2), v1(1, 2);
    v0[0] = AlgebraElement(std::vector<Cx>{Cx(1, 0), Cx(2, 0)});
    v1[0] = AlgebraElement(std::vector<Cx>{Cx(1, 0), Cx(-2, 0)});
    CHECK_THROWS_AS(check_pointwise_locality(spec, v0, v1, 0, 1e-9), DomainViolation);
}

TEST_CASE("disagreeing inputs are rejected up front") {
    PolyMap sq(1, 1, 2);
    sq.add_term(1, {2}, Algebra(2).unit());
    const MapSpec spec = MapSpec::from_polynomial(sq);
    const AModuleVector u0 = components({Cx(1, 0), Cx(2, 0)});
    const AModuleVector u1 = components({Cx(3, 0), Cx(2, 0)});
    CHECK_THROWS_AS(check_pointwise_locality(spec, u0, u1, 0, 1e-9), BadParameters);
    // but they do agree at component 1
    const LocalityReport report = check_pointwise_locality(spec, u0, u1, 1, 1e-9);
    CHECK(report.locality_ok);
}
