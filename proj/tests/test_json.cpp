#include "doctest.h"

#include "aholo/json_io.hpp"

#include "helpers.hpp"

using namespace aholo;

TEST_CASE("algebra elements and points round trip") {
    testutil::Rng rng(111);
    for (int rep = 0; rep < 20; ++rep) {
        const AlgebraElement a = rng.alg(rng.uniform_int(1, 4));
        CHECK(alg_from_json(alg_to_json(a)) == a);
        const AModuleVector p = rng.vec(rng.uniform_int(1, 3), rng.uniform_int(1, 3));
        CHECK(norm(point_from_json(point_to_json(p)) - p) == 0.0);
    }
    CHECK_THROWS_AS(alg_from_json(Json::array()), ParseError);
}

TEST_CASE("forms round trip through their wedge coefficients") {
    testutil::Rng rng(112);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = rng.uniform_int(1, 4);
        const int k = rng.uniform_int(0, std::min(3, n));
        const AntisymForm f = rng.form(n, k, rng.uniform_int(1, 3));
        const AntisymForm g = form_from_json(form_to_json(f));
        CHECK(g.rank() == f.rank());
        CHECK(g.degree() == f.degree());
        CHECK(norm_coeffs(g - f) == 0.0);
    }
}

TEST_CASE("polynomial maps round trip term by term") {
    testutil::Rng rng(113);
    for (int rep = 0; rep < 20; ++rep) {
        const PolyMap f = rng.poly(rng.uniform_int(1, 3), rng.uniform_int(1, 3),
                                   rng.uniform_int(1, 3), 4);
        const PolyMap g = polymap_from_json(polymap_to_json(f));
        REQUIRE(g.vars() == f.vars());
        REQUIRE(g.outputs() == f.outputs());
        for (int o = 0; o < f.outputs(); ++o) {
            REQUIRE(g.output(o).terms().size() == f.output(o).terms().size());
            for (const auto& [e, c] : f.output(o).terms()) CHECK(g.output(o).terms().at(e) == c);
        }
    }
}

TEST_CASE("map specs accept bare term lists and builtins") {
    Json bare;
    bare["n"] = 1;
    bare["k"] = 1;
    bare["terms"] = Json::array();
    bare["terms"].push_back(
        {{"output", 1}, {"exponents", Json::array({2})}, {"coeff", Json::array({Json::array({1.0, 0.0})})}});
    const MapSpec f = mapspec_from_json(bare);
    CHECK(f.kind() == MapSpec::Kind::polynomial);

    Json builtin;
    builtin["kind"] = "builtin";
    builtin["name"] = "component_swap";
    builtin["m"] = 2;
    const MapSpec g = mapspec_from_json(builtin);
    CHECK(g.kind() == MapSpec::Kind::blackbox);

    Json bad;
    bad["kind"] = "mystery";
    CHECK_THROWS_AS(mapspec_from_json(bad), ParseError);
}

TEST_CASE("regions round trip") {
    const std::vector<Region> regions = {
        Region::full_plane(),          Region::disk(Cx(1.5, -2.0), 0.75),
        Region::half_plane_im_gt(1.0), Region::half_plane_im_lt(-0.5),
        Region::punctured_plane(),     Region::annulus(0.25, 4.0)};
    for (const Region& g : regions) {
        const Region h = region_from_json(region_to_json(g));
        CHECK(h.kind == g.kind);
        CHECK(h.center == g.center);
        CHECK(h.radius == g.radius);
        CHECK(h.c == g.c);
        CHECK(h.r_inner == g.r_inner);
        CHECK(h.r_outer == g.r_outer);
    }
    Json bad;
    bad["kind"] = "hexagon";
    CHECK_THROWS_AS(region_from_json(bad), ParseError);
}

TEST_CASE("atlases round trip and revalidate") {
    const Atlas atlas = build_manifold_N(1.0, 2.0);
    const Json j = atlas_to_json(atlas);
    const Atlas back = atlas_from_json(j);
    REQUIRE(back.charts.size() == atlas.charts.size());
    REQUIRE(back.transitions.size() == atlas.transitions.size());
    CHECK(back.m == atlas.m);
    CHECK(validate_atlas(back, 16, 1e-10).pass);
    // serialization is stable: dumping twice gives identical bytes
    CHECK(atlas_to_json(back).dump(2) == j.dump(2));

    const Atlas p1 = build_projective_line(3);
    const Atlas p1_back = atlas_from_json(atlas_to_json(p1));
    CHECK(validate_atlas(p1_back, 16, 1e-9).pass);
    CHECK(p1_back.transitions[0].kind == TransitionMap::Kind::monomial_inversion);
}

TEST_CASE("polynomial transitions and triples survive serialization") {
    const Atlas atlas = testutil::make_three_chart_atlas(2);
    const Atlas back = atlas_from_json(atlas_to_json(atlas));
    REQUIRE(back.triples.size() == 1);
    CHECK(back.triples[0] == std::array<int, 3>{0, 1, 2});
    CHECK(back.transitions[0].kind == TransitionMap::Kind::polynomial);
    const AtlasReport report = validate_atlas(back, 8, 1e-9);
    CHECK(report.pass);
    REQUIRE(report.triples.size() == 1);
}

TEST_CASE("blackbox transitions refuse to serialize") {
    Atlas atlas;
    atlas.m = 1;
    atlas.n = 1;
    AModuleVector w(1, 1);
    atlas.charts.push_back(Chart{"U", 1, DomainDescriptor::full(1, 1), w});
    TransitionMap t;
    t.from = "U";
    t.to = "U";
    t.kind = TransitionMap::Kind::blackbox;
    t.custom_fn = [](const AModuleVector& p) { return p; };
    t.overlap = DomainDescriptor::full(1, 1);
    atlas.transitions.push_back(std::move(t));
    CHECK_THROWS_AS(atlas_to_json(atlas), StructuralError);
}
