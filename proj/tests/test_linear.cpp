#include "doctest.h"

#include "aholo/linear.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace aholo;

TEST_CASE("apply_linear basics") {
    const int m = 2;
    testutil::Rng rng(21);
    const ALinearMap id = ALinearMap::identity(2, m);
    const AModuleVector x = rng.vec(2, m);
    CHECK(norm(apply_linear(id, x) - x) == 0.0);

    const AlgebraElement a(std::vector<Cx>{Cx(2, 0), Cx(3, 0)});
    const ALinearMap diag = ALinearMap::diagonal({a, a});
    const AModuleVector e1 = AModuleVector::basis(2, m, 0);
    const AModuleVector y = apply_linear(diag, e1);
    CHECK(norm(y[0] - a) == 0.0);
    CHECK(norm(y[1]) == 0.0);

    CHECK_THROWS_AS(apply_linear(id, AModuleVector(3, m)), RankMismatch);
}

TEST_CASE("apply_linear is A-linear and matches the componentwise oracle") {
    testutil::Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const int m = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 4);
        const int k = rng.uniform_int(1, 4);
        const ALinearMap f = rng.map(k, n, m);
        const AModuleVector x = rng.vec(n, m);
        const AlgebraElement a = rng.alg(m);

        CHECK(norm(apply_linear(f, x) - oracle::componentwise_apply(f, x)) <= 1e-14);
        const double lin_err = norm(apply_linear(f, a * x) - a * apply_linear(f, x));
        CHECK(lin_err <= 1e-13 * std::max(1.0, norm(a) * norm(x)));
    }
}

TEST_CASE("compose_linear") {
    testutil::Rng rng(23);
    const int m = 2;
    const ALinearMap f = rng.map(3, 3, m);
    CHECK(oracle::map_distance(compose_linear(f, ALinearMap::identity(3, m)), f) == 0.0);

    const AlgebraElement a = rng.alg(m);
    const AlgebraElement b = rng.alg(m);
    const ALinearMap dd = compose_linear(ALinearMap::diagonal({a, a}), ALinearMap::diagonal({b, b}));
    CHECK(norm(dd.at(0, 0) - a * b) == 0.0);

    for (int i = 0; i < 30; ++i) {
        const ALinearMap g = rng.map(3, 3, m);
        const ALinearMap h = rng.map(3, 3, m);
        CHECK(oracle::map_distance(compose_linear(g, h), oracle::componentwise_compose(g, h)) <= 1e-13);
        const AModuleVector x = rng.vec(3, m);
        CHECK(norm(apply_linear(compose_linear(g, h), x) - apply_linear(g, apply_linear(h, x))) <=
              1e-12);
    }
    CHECK_THROWS_AS(compose_linear(rng.map(2, 3, m), rng.map(2, 3, m)), RankMismatch);
}

TEST_CASE("composition is associative") {
    testutil::Rng rng(24);
    const int m = 2;
    const ALinearMap f = rng.map(2, 3, m);
    const ALinearMap g = rng.map(3, 2, m);
    const ALinearMap h = rng.map(2, 2, m);
    const ALinearMap left = compose_linear(compose_linear(f, g), h);
    const ALinearMap right = compose_linear(f, compose_linear(g, h));
    CHECK(oracle::map_distance(left, right) <= 1e-12);
}

TEST_CASE("determinant over A") {
    const int m = 2;
    testutil::Rng rng(25);
    // 2x2 block determinant, componentwise
    const AlgebraElement a = rng.alg(m), b = rng.alg(m), c = rng.alg(m), d = rng.alg(m);
    const AlgebraElement det = det_A({{a, b}, {c, d}});
    CHECK(norm(det - (a * d - b * c)) <= 1e-14);

    // LU path (k = 4) agrees with cofactor expansion along the first row
    AMatrix big(4, std::vector<AlgebraElement>(4, AlgebraElement(m)));
    for (auto& row : big)
        for (auto& v : row) v = rng.alg(m);
    AlgebraElement cofactor_sum(m);
    for (int c4 = 0; c4 < 4; ++c4) {
        AMatrix minor;
        for (int r = 1; r < 4; ++r) {
            std::vector<AlgebraElement> row;
            for (int cc = 0; cc < 4; ++cc)
                if (cc != c4) row.push_back(big[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)]);
            minor.push_back(std::move(row));
        }
        const Cx sign = (c4 % 2 == 0) ? Cx(1, 0) : Cx(-1, 0);
        cofactor_sum += sign * (big[0][static_cast<std::size_t>(c4)] * det_A(minor));
    }
    CHECK(norm(det_A(big) - cofactor_sum) <= 1e-12);
}

TEST_CASE("inverse_linear") {
    testutil::Rng rng(26);
    for (int i = 0; i < 30; ++i) {
        const int m = rng.uniform_int(1, 3);
        const int n = rng.uniform_int(1, 4);
        const ALinearMap f = rng.invertible_map(n, m);
        const ALinearMap inv = inverse_linear(f);
        const double err = oracle::map_distance(compose_linear(f, inv), ALinearMap::identity(n, m));
        CHECK(err <= 1e-12);
    }

    // singular component is named
    ALinearMap f(1, 1, 2);
    f.at(0, 0) = AlgebraElement(std::vector<Cx>{Cx(1, 0), Cx(0, 0)});
    try {
        inverse_linear(f);
        FAIL("expected SingularMap");
    } catch (const SingularMap& e) {
        REQUIRE(e.components.size() == 1);
        CHECK(e.components[0] == 1);
    }
}

TEST_CASE("operator norm is the max absolute row sum per component") {
    ALinearMap f(1, 2, 1);
    f.at(0, 0) = AlgebraElement(std::vector<Cx>{Cx(1, 0)});
    f.at(0, 1) = AlgebraElement(std::vector<Cx>{Cx(-1, 0)});
    CHECK(operator_norm(f) == doctest::Approx(2.0));
    CHECK(operator_norm(ALinearMap::identity(5, 3)) == doctest::Approx(1.0));
}
