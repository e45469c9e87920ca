// Command-line front end: verification and exploration commands over the
// JSON formats described in the README.  Exit codes: 0 success/pass,
// 1 verification failure (findings printed), 2 structural or parse errors.
// Reports are byte-identical across runs on identical inputs: sampling is
// seeded, findings are sorted, numbers print with %.17g.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aholo/aholo.hpp"
#include "aholo/json_io.hpp"

using namespace aholo;

namespace {

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

// Text reports drop a real/imaginary part sitting below 1e-12 of the
// value's magnitude; JSON outputs always carry full precision.
std::string fmt_cx(const Cx& z) {
    const double scale = std::max(std::abs(z.real()), std::abs(z.imag()));
    double re = z.real(), im = z.imag();
    if (std::abs(im) <= 1e-12 * scale) im = 0.0;
    if (std::abs(re) <= 1e-12 * scale) re = 0.0;
    if (im == 0.0) return fmt_double(re);
    if (re == 0.0) return fmt_double(im) + "i";
    return fmt_double(re) + (im < 0 ? "" : "+") + fmt_double(im) + "i";
}

std::string fmt_alg(const AlgebraElement& a) {
    if (a.dim() == 1) return fmt_cx(a[0]);
    std::string out = "[";
    for (int j = 0; j < a.dim(); ++j) {
        if (j) out += ", ";
        out += fmt_cx(a[j]);
    }
    return out + "]";
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

std::string witness_line(const DiffWitness& w) {
    std::ostringstream os;
    os << "witness: kind="
       << (w.kind == DiffWitness::Kind::off_diagonal ? "off_diagonal" : "antiholomorphic")
       << " sample=" << w.sample << " output=" << w.out_coord + 1
       << " out_component=" << w.out_comp + 1 << " in_variable=" << w.in_var + 1
       << " in_component=" << w.in_comp + 1 << " magnitude=" << fmt_double(w.magnitude);
    return os.str();
}

int cmd_verify_atlas(const std::string& path, int samples, double tol, std::uint64_t seed) {
    const Atlas atlas = atlas_from_json(load_json(path));
    const AtlasReport report = validate_atlas(atlas, samples, tol, seed);
    std::ostringstream os;
    os << "atlas: " << atlas.charts.size() << " charts, " << atlas.transitions.size()
       << " transitions, " << atlas.triples.size() << " triples (m=" << atlas.m
       << ", n=" << atlas.n << ")\n";
    for (const auto& f : report.transitions) {
        os << "transition " << f.transition << ": samples=" << f.samples
           << " image_ok=" << (f.image_violations == 0 ? "yes" : "no")
           << " roundtrip=" << fmt_double(f.worst_identity)
           << " off_diagonal=" << fmt_double(f.worst_off_diagonal)
           << " antiholomorphic=" << fmt_double(f.worst_antiholomorphic)
           << (f.non_holomorphic ? " NON-HOLOMORPHIC" : "") << (f.pass ? " pass" : " FAIL")
           << "\n";
    }
    for (const auto& t : report.triples)
        os << "triple " << t.label << ": samples=" << t.samples
           << " cocycle=" << fmt_double(t.worst_cocycle) << (t.pass ? " pass" : " FAIL") << "\n";
    os << "result: " << (report.pass ? "PASS" : "FAIL") << " tol=" << fmt_double(tol) << "\n";
    std::cout << os.str();
    return report.pass ? 0 : 1;
}

int cmd_differentiate(const std::string& map_path, const std::string& at_path,
                      const std::string& dir_path, int nodes) {
    const MapSpec f = mapspec_from_json(load_json(map_path));
    const AModuleVector z = point_from_json(load_json(at_path));
    std::ostringstream os;
    if (!dir_path.empty()) {
        const AModuleVector zdot = point_from_json(load_json(dir_path));
        const AModuleVector d = cauchy_directional_derivative(f, z, zdot, nodes);
        for (int o = 0; o < d.rank(); ++o) {
            if (o) os << "\n";
            os << fmt_alg(d[o]);
        }
        os << "\n";
    } else {
        const ALinearMap df = frechet_matrix(f, z, nodes);
        for (int r = 0; r < df.rows(); ++r) {
            for (int c = 0; c < df.cols(); ++c) {
                if (c) os << " ";
                os << fmt_alg(df.at(r, c));
            }
            os << "\n";
        }
    }
    std::cout << os.str();
    return 0;
}

int cmd_is_a_diff(const std::string& map_path, int samples, double tol, std::uint64_t seed,
                  int nodes) {
    const MapSpec f = mapspec_from_json(load_json(map_path));
    const std::vector<AModuleVector> pts =
        sample_domain(f.domain(), samples / 2, samples - samples / 2, seed);
    const DiffReport report = is_A_differentiable(f, pts, tol, nodes);
    std::ostringstream os;
    os << "samples=" << report.samples_checked
       << " worst_off_diagonal=" << fmt_double(report.worst_off_diagonal)
       << " worst_antiholomorphic=" << fmt_double(report.worst_antiholomorphic)
       << " tol=" << fmt_double(report.tol) << "\n";
    if (report.a_differentiable) {
        os << "verdict: A-differentiable\n";
        std::cout << os.str();
        return 0;
    }
    os << "verdict: NOT A-differentiable"
       << (report.holomorphic ? "" : " (not even C-holomorphic)") << "\n";
    if (report.witness) os << witness_line(*report.witness) << "\n";
    std::cout << os.str();
    return 1;
}

int cmd_pullback(const std::string& form_path, const std::string& map_path,
                 const std::string& out_path) {
    const AntisymForm form = form_from_json(load_json(form_path));
    const Json mj = load_json(map_path);
    const Json& rows = mj.contains("matrix") ? mj.at("matrix") : mj.at("map").at("matrix");
    if (mj.contains("translation")) {
        const AModuleVector t = point_from_json(mj.at("translation"));
        if (norm(t) != 0.0)
            throw ParseError("pullback needs a linear map; nonzero translation given");
    }
    const int n_rows = static_cast<int>(rows.size());
    const int n_cols = static_cast<int>(rows[0].size());
    ALinearMap F(n_rows, n_cols, alg_from_json(rows[0][0]).dim());
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < n_cols; ++c) F.at(r, c) = alg_from_json(rows[r][c]);
    const AntisymForm pulled = pullback(F, form);
    const std::string text = form_to_json(pulled).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
    return 0;
}

int cmd_norm(const std::string& form_path, const std::string& mode) {
    const AntisymForm form = form_from_json(load_json(form_path));
    std::ostringstream os;
    if (mode == "bracket") {
        const NormBracket b = norm_bracket(form);
        os << "[" << fmt_double(b.lower) << ", " << fmt_double(b.upper) << "]\n";
    } else if (mode == "exact") {
        os << fmt_double(multilinear_norm(form, NormMode::exact_k1)) << "\n";
    } else if (mode == "upper") {
        os << fmt_double(multilinear_norm(form, NormMode::upper)) << "\n";
    } else if (mode == "lower") {
        os << fmt_double(multilinear_norm(form, NormMode::sampled_lower)) << "\n";
    } else {
        throw ParseError("unknown norm mode: " + mode);
    }
    std::cout << os.str();
    return 0;
}

int cmd_cech(const std::string& cover, const std::string& sheaf, int trunc, int m, int n,
             bool as_json) {
    CoverSpec spec;
    if (cover == "p1")
        spec.kind = CoverKind::p1_two_chart;
    else if (cover == "single")
        spec.kind = CoverKind::single_chart;
    else if (cover == "polydisk")
        spec.kind = CoverKind::polydisk_two_cover;
    else
        throw ParseError("unknown cover: " + cover);
    spec.truncation = trunc;
    spec.m = m;
    spec.n = n;

    SheafKind sk;
    int degree = 0;
    if (sheaf == "O") {
        sk = SheafKind::structure;
    } else if (sheaf == "omega1") {
        sk = SheafKind::k_forms;
        degree = 1;
    } else {
        throw ParseError("unknown sheaf: " + sheaf + " (use O or omega1)");
    }

    const CechComplexData data = build_cech_complex(spec, sk, degree);
    const CohomologyReport report = cohomology_ranks(data);

    if (as_json) {
        Json out;
        out["ranks"] = report.ranks;
        out["per_component"] = report.per_component;
        out["euler"] = report.euler;
        Json windows;
        for (const auto& [label, window] : report.windows)
            windows[label] = Json::array({window.first, window.second});
        out["windows"] = std::move(windows);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::ostringstream os;
    os << "cover=" << cover << " sheaf=" << sheaf << " D=" << trunc << " m=" << m;
    if (spec.kind != CoverKind::p1_two_chart) os << " n=" << n;
    os << "\n";
    for (std::size_t q = 0; q < report.cochain_dims.size(); ++q)
        os << "C^" << q << " rank " << report.cochain_dims[q] << "\n";
    for (std::size_t q = 0; q < report.ranks.size(); ++q) {
        os << "H^" << q << " = ";
        if (report.uniform) {
            os << report.ranks[q];
        } else {
            os << "per-component [";
            for (std::size_t j = 0; j < report.per_component.size(); ++j) {
                if (j) os << ", ";
                os << report.per_component[j][q];
            }
            os << "]";
        }
        os << "\n";
    }
    os << "euler = " << report.euler << "\n";
    os << "windows:";
    for (const auto& [label, window] : report.windows)
        os << " " << label << "=[" << window.first << "," << window.second << "]";
    os << "\n";
    if (spec.kind == CoverKind::polydisk_two_cover)
        os << "note: truncated-model evidence only, not a proof about the full section spaces\n";
    std::cout << os.str();
    return 0;
}

int cmd_glue_report(const std::string& path, int component) {
    const Atlas atlas = atlas_from_json(load_json(path));
    if (component < 1 || component > atlas.m)
        throw ParseError("component must be in 1.." + std::to_string(atlas.m));
    const auto reports = componentwise_glue_report(atlas);
    const GlueComponentReport& r = reports[static_cast<std::size_t>(component - 1)];
    std::ostringstream os;
    os << "component " << component << " of " << atlas.m << "\n";
    for (const auto& [name, region] : r.chart_regions)
        os << "chart " << name << ": " << region.describe() << "\n";
    for (const auto& g : r.gluings) {
        os << "gluing " << g.from << " -> " << g.to << " on " << g.source.describe() << ": "
           << g.map_text;
        if (g.image) os << "   [image: " << g.image->describe() << "]";
        os << "\n";
    }
    os << "candidate non-Hausdorff pairs (exploratory evidence, not a decision): "
       << r.candidates.size() << "\n";
    for (const auto& c : r.candidates)
        os << "  " << c.chart_a << " : " << fmt_cx(c.p) << "  ~  " << c.chart_b << " : "
           << fmt_cx(c.q) << "\n";
    std::cout << os.str();
    return 0;
}

int cmd_locality(const std::string& map_path, const std::string& u0_path,
                 const std::string& u1_path, int x, double tol) {
    const MapSpec f = mapspec_from_json(load_json(map_path));
    const AModuleVector u0 = point_from_json(load_json(u0_path));
    const AModuleVector u1 = point_from_json(load_json(u1_path));
    const LocalityReport report = check_pointwise_locality(f, u0, u1, x, tol);
    std::ostringstream os;
    if (!report.hypothesis_ok) {
        os << "hypothesis FAILED: the derivative is not A-linear along the segment\n";
        if (report.witness) {
            os << witness_line(*report.witness);
            if (report.witness_t) os << " t=" << fmt_double(*report.witness_t);
            os << "\n";
        }
        os << "locality: not evaluated (the hypothesis does not hold)\n";
        std::cout << os.str();
        return 1;
    }
    os << "hypothesis ok: derivative is A-linear along the segment (worst violation "
       << fmt_double(report.worst_violation) << ")\n";
    os << "|F(u0)(x) - F(u1)(x)| = " << fmt_double(report.deviation) << " at x=" << x << "\n";
    os << "locality: " << (report.locality_ok ? "ok" : "VIOLATED") << "\n";
    std::cout << os.str();
    return report.locality_ok ? 0 : 1;
}

int cmd_example(const std::string& which, double c1, double c2, int m,
                const std::string& emit_path) {
    Atlas atlas;
    if (which == "manifold-n")
        atlas = build_manifold_N(c1, c2);
    else if (which == "p1")
        atlas = build_projective_line(m);
    else
        throw ParseError("unknown example: " + which);
    const std::string text = atlas_to_json(atlas).dump(2) + "\n";
    if (emit_path.empty())
        std::cout << text;
    else
        write_text(emit_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations with A-holomorphic maps, forms, atlases, and Cech cohomology "
                 "over A = C^m"};
    app.require_subcommand(1);

    // verify-atlas
    std::string va_path;
    int va_samples = 64;
    double va_tol = 1e-9;
    std::uint64_t va_seed = kDefaultSeed;
    auto* va = app.add_subcommand("verify-atlas", "check the manifold axioms on an atlas file");
    va->add_option("file", va_path)->required();
    va->add_option("--samples", va_samples, "samples per overlap");
    va->add_option("--tol", va_tol);
    va->add_option("--seed", va_seed);

    // differentiate
    std::string d_map, d_at, d_dir;
    int d_nodes = kDefaultNodes;
    auto* dd = app.add_subcommand("differentiate", "derivative of a map at a point");
    dd->add_option("map", d_map)->required();
    dd->add_option("--at", d_at)->required();
    dd->add_option("--direction", d_dir, "directional derivative instead of the full matrix");
    dd->add_option("--nodes", d_nodes);

    // is-a-diff
    std::string ia_map;
    int ia_samples = 8;
    double ia_tol = 1e-9;
    std::uint64_t ia_seed = kDefaultSeed;
    int ia_nodes = kDefaultNodes;
    auto* ia = app.add_subcommand("is-a-diff", "decide A-differentiability on domain samples");
    ia->add_option("map", ia_map)->required();
    ia->add_option("--samples", ia_samples);
    ia->add_option("--tol", ia_tol);
    ia->add_option("--seed", ia_seed);
    ia->add_option("--nodes", ia_nodes);

    // pullback
    std::string pb_form, pb_map, pb_out;
    auto* pb = app.add_subcommand("pullback", "pull a form back along a linear map");
    pb->add_option("form", pb_form)->required();
    pb->add_option("map", pb_map)->required();
    pb->add_option("--out", pb_out);

    // norm
    std::string nm_form, nm_mode = "bracket";
    auto* nm = app.add_subcommand("norm", "multilinear norm bracket of a form");
    nm->add_option("form", nm_form)->required();
    nm->add_option("--mode", nm_mode, "bracket|exact|upper|lower");

    // cech
    std::string ce_cover, ce_sheaf = "O";
    int ce_trunc = 3, ce_m = 1, ce_n = 1;
    bool ce_json = false;
    auto* ce = app.add_subcommand("cech", "truncated Cech cohomology ranks");
    ce->add_option("--cover", ce_cover, "p1|single|polydisk")->required();
    ce->add_option("--sheaf", ce_sheaf, "O|omega1");
    ce->add_option("--trunc", ce_trunc)->required();
    ce->add_option("--m", ce_m);
    ce->add_option("--n", ce_n);
    ce->add_flag("--json", ce_json);

    // glue-report
    std::string gr_path;
    int gr_component = 1;
    auto* gr = app.add_subcommand("glue-report", "per-component gluing graph and candidates");
    gr->add_option("file", gr_path)->required();
    gr->add_option("--component", gr_component, "1-based Gelfand component")->required();

    // locality
    std::string lo_map, lo_u0, lo_u1;
    int lo_x = 0;
    double lo_tol = 1e-9;
    auto* lo = app.add_subcommand("locality", "pointwise-locality test for a map into A");
    lo->add_option("map", lo_map)->required();
    lo->add_option("--u0", lo_u0)->required();
    lo->add_option("--u1", lo_u1)->required();
    lo->add_option("--x", lo_x, "0-based point of X = {0..m-1}")->required();
    lo->add_option("--tol", lo_tol);

    // example
    std::string ex_which, ex_emit;
    double ex_c1 = 1.0, ex_c2 = 2.0;
    int ex_m = 1;
    auto* ex = app.add_subcommand("example", "emit a built-in atlas (manifold-n or p1)");
    ex->add_option("which", ex_which)->required();
    ex->add_option("--c1", ex_c1);
    ex->add_option("--c2", ex_c2);
    ex->add_option("--m", ex_m);
    ex->add_option("--emit", ex_emit, "write to this path instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (va->parsed()) return cmd_verify_atlas(va_path, va_samples, va_tol, va_seed);
        if (dd->parsed()) return cmd_differentiate(d_map, d_at, d_dir, d_nodes);
        if (ia->parsed()) return cmd_is_a_diff(ia_map, ia_samples, ia_tol, ia_seed, ia_nodes);
        if (pb->parsed()) return cmd_pullback(pb_form, pb_map, pb_out);
        if (nm->parsed()) return cmd_norm(nm_form, nm_mode);
        if (ce->parsed()) return cmd_cech(ce_cover, ce_sheaf, ce_trunc, ce_m, ce_n, ce_json);
        if (gr->parsed()) return cmd_glue_report(gr_path, gr_component);
        if (lo->parsed()) return cmd_locality(lo_map, lo_u0, lo_u1, lo_x, lo_tol);
        if (ex->parsed()) return cmd_example(ex_which, ex_c1, ex_c2, ex_m, ex_emit);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
