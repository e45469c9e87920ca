#pragma once

/// On-disk formats.  Algebra elements are arrays of [re, im] pairs; points
/// are arrays of algebra elements; forms, polynomial maps, and atlases are
/// the JSON objects documented in the README.  Indices in files are
/// 1-based (variables, wedge tuples, term outputs); chart triples refer to
/// 0-based positions in the chart list.

#include <string>
#include <vector>

#include "json.hpp"

#include "aholo/builtin_maps.hpp"
#include "aholo/calculus.hpp"
#include "aholo/forms.hpp"
#include "aholo/manifold.hpp"
#include "aholo/polynomial.hpp"
#include "aholo/region.hpp"

namespace aholo {

using Json = nlohmann::ordered_json;

inline Json alg_to_json(const AlgebraElement& a) {
    Json out = Json::array();
    for (int j = 0; j < a.dim(); ++j) out.push_back(Json::array({a[j].real(), a[j].imag()}));
    return out;
}

inline AlgebraElement alg_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("algebra element must be a nonempty array");
    std::vector<Cx> comps;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError("algebra component must be a [re, im] pair");
        comps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return AlgebraElement(std::move(comps));
}

inline Json point_to_json(const AModuleVector& p) {
    Json out = Json::array();
    for (int l = 0; l < p.rank(); ++l) out.push_back(alg_to_json(p[l]));
    return out;
}

inline AModuleVector point_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("point must be a nonempty array");
    std::vector<AlgebraElement> entries;
    for (const auto& e : j) entries.push_back(alg_from_json(e));
    return AModuleVector(std::move(entries));
}

inline Json form_to_json(const AntisymForm& f) {
    Json out;
    out["n"] = f.rank();
    out["k"] = f.degree();
    out["m"] = f.algebra_dim();
    Json coeffs = Json::array();
    for (const auto& [idx, value] : f.coeffs()) {
        Json entry;
        entry["index"] = idx;
        entry["value"] = alg_to_json(value);
        coeffs.push_back(std::move(entry));
    }
    out["coeffs"] = std::move(coeffs);
    return out;
}

inline AntisymForm form_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    int m = j.value("m", 0);
    const Json& coeffs = j.at("coeffs");
    if (m == 0) {
        if (coeffs.empty()) throw ParseError("form needs \"m\" when it has no coefficients");
        m = static_cast<int>(coeffs[0].at("value").size());
    }
    AntisymForm f(n, k, m);
    for (const auto& entry : coeffs) {
        IndexTuple idx = entry.at("index").get<IndexTuple>();
        f.set(idx, alg_from_json(entry.at("value")));
    }
    return f;
}

inline Json polymap_to_json(const PolyMap& f) {
    Json out;
    out["kind"] = "polynomial";
    out["n"] = f.vars();
    out["k"] = f.outputs();
    out["m"] = f.algebra_dim();
    Json terms = Json::array();
    for (int o = 0; o < f.outputs(); ++o)
        for (const auto& [e, c] : f.output(o).terms()) {
            Json term;
            term["output"] = o + 1;
            term["exponents"] = e;
            term["coeff"] = alg_to_json(c);
            terms.push_back(std::move(term));
        }
    out["terms"] = std::move(terms);
    return out;
}

inline PolyMap polymap_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    const Json& terms = j.at("terms");
    int m = j.value("m", 0);
    if (m == 0) {
        if (terms.empty()) throw ParseError("polynomial map needs \"m\" when it has no terms");
        m = static_cast<int>(terms[0].at("coeff").size());
    }
    PolyMap f(n, k, m);
    for (const auto& term : terms) {
        const Exponents e = term.at("exponents").get<Exponents>();
        f.add_term(term.at("output").get<int>(), e, alg_from_json(term.at("coeff")));
    }
    return f;
}

/// Maps on disk are polynomial term lists or named builtins (the
/// detector's counterexamples cannot be polynomials with A coefficients).
inline MapSpec mapspec_from_json(const Json& j) {
    const std::string kind = j.value("kind", j.contains("terms") ? "polynomial" : "");
    if (kind == "polynomial") return MapSpec::from_polynomial(polymap_from_json(j));
    if (kind == "builtin") {
        const int m = j.at("m").get<int>();
        std::vector<int> perm;
        if (j.contains("perm")) perm = j.at("perm").get<std::vector<int>>();
        return make_builtin_map(j.at("name").get<std::string>(), m, perm);
    }
    throw ParseError("map file must have kind \"polynomial\" or \"builtin\"");
}

inline Json region_to_json(const Region& g) {
    Json out;
    switch (g.kind) {
        case Region::Kind::full_plane:
            out["kind"] = "full_plane";
            break;
        case Region::Kind::disk:
            out["kind"] = "disk";
            out["center"] = Json::array({g.center.real(), g.center.imag()});
            out["radius"] = g.radius;
            break;
        case Region::Kind::half_plane_im_gt:
            out["kind"] = "half_plane_im_gt";
            out["c"] = g.c;
            break;
        case Region::Kind::half_plane_im_lt:
            out["kind"] = "half_plane_im_lt";
            out["c"] = g.c;
            break;
        case Region::Kind::punctured_plane:
            out["kind"] = "punctured_plane";
            break;
        case Region::Kind::annulus:
            out["kind"] = "annulus";
            out["r"] = g.r_inner;
            out["R"] = g.r_outer;
            break;
    }
    return out;
}

inline Region region_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "full_plane") return Region::full_plane();
    if (kind == "disk")
        return Region::disk(Cx(j.at("center")[0].get<double>(), j.at("center")[1].get<double>()),
                            j.at("radius").get<double>());
    if (kind == "half_plane_im_gt") return Region::half_plane_im_gt(j.at("c").get<double>());
    if (kind == "half_plane_im_lt") return Region::half_plane_im_lt(j.at("c").get<double>());
    if (kind == "punctured_plane") return Region::punctured_plane();
    if (kind == "annulus") return Region::annulus(j.at("r").get<double>(), j.at("R").get<double>());
    throw ParseError("unknown region kind: " + kind);
}

inline Json domain_to_json(const DomainDescriptor& d) {
    Json out = Json::array();
    for (const auto& per_var : d.regions) {
        Json row = Json::array();
        for (const auto& g : per_var) row.push_back(region_to_json(g));
        out.push_back(std::move(row));
    }
    return out;
}

inline DomainDescriptor domain_from_json(const Json& j) {
    DomainDescriptor d;
    if (!j.is_array() || j.empty()) throw ParseError("domain must be a nonempty array of arrays");
    for (const auto& row : j) {
        std::vector<Region> per_var;
        for (const auto& g : row) per_var.push_back(region_from_json(g));
        d.regions.push_back(std::move(per_var));
    }
    return d;
}

inline Json transition_to_json(const TransitionMap& t) {
    Json out;
    out["from"] = t.from;
    out["to"] = t.to;
    out["overlap"] = domain_to_json(t.overlap);
    Json map;
    switch (t.kind) {
        case TransitionMap::Kind::affine: {
            map["kind"] = "affine";
            Json rows = Json::array();
            for (int r = 0; r < t.matrix.rows(); ++r) {
                Json row = Json::array();
                for (int c = 0; c < t.matrix.cols(); ++c) row.push_back(alg_to_json(t.matrix.at(r, c)));
                rows.push_back(std::move(row));
            }
            map["matrix"] = std::move(rows);
            map["translation"] = point_to_json(t.translation);
            break;
        }
        case TransitionMap::Kind::polynomial:
            map = polymap_to_json(t.poly);
            break;
        case TransitionMap::Kind::monomial_inversion: {
            map["kind"] = "monomial_inversion";
            Json vars = Json::array();
            for (int l : t.inverted_vars) vars.push_back(l + 1);
            map["variables"] = std::move(vars);
            break;
        }
        case TransitionMap::Kind::blackbox:
            throw StructuralError("blackbox transitions are in-memory only and cannot be "
                                  "serialized; use affine, polynomial, or monomial_inversion");
    }
    out["map"] = std::move(map);
    out["inverse"] = t.inverse_name;
    return out;
}

inline TransitionMap transition_from_json(const Json& j) {
    TransitionMap t;
    t.from = j.at("from").get<std::string>();
    t.to = j.at("to").get<std::string>();
    t.overlap = domain_from_json(j.at("overlap"));
    t.inverse_name = j.at("inverse").get<std::string>();
    const Json& map = j.at("map");
    const std::string kind = map.at("kind").get<std::string>();
    if (kind == "affine") {
        t.kind = TransitionMap::Kind::affine;
        const Json& rows = map.at("matrix");
        const int n_rows = static_cast<int>(rows.size());
        const int n_cols = static_cast<int>(rows[0].size());
        const AlgebraElement first = alg_from_json(rows[0][0]);
        t.matrix = ALinearMap(n_rows, n_cols, first.dim());
        for (int r = 0; r < n_rows; ++r)
            for (int c = 0; c < n_cols; ++c) t.matrix.at(r, c) = alg_from_json(rows[r][c]);
        t.translation = point_from_json(map.at("translation"));
    } else if (kind == "polynomial") {
        t.kind = TransitionMap::Kind::polynomial;
        t.poly = polymap_from_json(map);
    } else if (kind == "monomial_inversion") {
        t.kind = TransitionMap::Kind::monomial_inversion;
        for (const auto& v : map.at("variables")) t.inverted_vars.push_back(v.get<int>() - 1);
    } else {
        throw ParseError("unknown transition map kind: " + kind);
    }
    return t;
}

inline Json atlas_to_json(const Atlas& atlas) {
    Json out;
    out["m"] = atlas.m;
    out["n"] = atlas.n;
    Json charts = Json::array();
    for (const auto& chart : atlas.charts) {
        Json c;
        c["name"] = chart.name;
        c["domain"] = domain_to_json(chart.domain);
        c["witness"] = point_to_json(chart.witness);
        charts.push_back(std::move(c));
    }
    out["charts"] = std::move(charts);
    Json transitions = Json::array();
    for (const auto& t : atlas.transitions) transitions.push_back(transition_to_json(t));
    out["transitions"] = std::move(transitions);
    Json triples = Json::array();
    for (const auto& tr : atlas.triples) triples.push_back(Json::array({tr[0], tr[1], tr[2]}));
    out["triples"] = std::move(triples);
    return out;
}

inline Atlas atlas_from_json(const Json& j) {
    Atlas atlas;
    atlas.m = j.at("m").get<int>();
    atlas.n = j.at("n").get<int>();
    for (const auto& c : j.at("charts")) {
        Chart chart;
        chart.name = c.at("name").get<std::string>();
        chart.domain = domain_from_json(c.at("domain"));
        chart.witness = point_from_json(c.at("witness"));
        chart.n = chart.domain.vars();
        atlas.charts.push_back(std::move(chart));
    }
    for (const auto& t : j.at("transitions")) atlas.transitions.push_back(transition_from_json(t));
    if (j.contains("triples"))
        for (const auto& tr : j.at("triples"))
            atlas.triples.push_back({tr[0].get<int>(), tr[1].get<int>(), tr[2].get<int>()});
    return atlas;
}

}  // namespace aholo
