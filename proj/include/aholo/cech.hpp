#pragma once

/// Truncated Cech complexes of the structure sheaf and the k-form sheaf
/// over small supported covers.  Section spaces are free A-modules of
/// monomials inside explicit Laurent-degree windows; restriction maps are
/// symbolic degree shifts, so coboundaries have exact integer entries and
/// a contribution that would leave its window is an error rather than a
/// silent truncation.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aholo/forms.hpp"
#include "aholo/linear.hpp"
#include "aholo/manifold.hpp"
#include "aholo/numeric_rank.hpp"

namespace aholo {

enum class CoverKind { single_chart, p1_two_chart, polydisk_two_cover };
enum class SheafKind { structure, k_forms };

struct CoverSpec {
    CoverKind kind = CoverKind::single_chart;
    int truncation = 3;  // D
    int m = 1;
    int n = 1;                     // variables (ignored for p1, which is rank 1)
    const Atlas* atlas = nullptr;  // optional: checked for kind consistency when given
    // overrides the overlap Laurent window (per variable) when set; the
    // standard windows make every restriction total, a smaller one trips
    // the adequacy check
    std::optional<std::pair<int, int>> overlap_window;
};

struct SectionWindow {
    std::vector<int> lo, hi;  // per-variable degree window, inclusive
    int form_degree = 0;

    int vars() const { return static_cast<int>(lo.size()); }

    long long monomial_count() const {
        long long c = 1;
        for (int l = 0; l < vars(); ++l)
            c *= static_cast<long long>(hi[static_cast<std::size_t>(l)] -
                                        lo[static_cast<std::size_t>(l)] + 1);
        return c;
    }

    long long dim() const { return monomial_count() * wedge_rank(vars(), form_degree); }

    bool contains(const std::vector<int>& degrees) const {
        for (int l = 0; l < vars(); ++l)
            if (degrees[static_cast<std::size_t>(l)] < lo[static_cast<std::size_t>(l)] ||
                degrees[static_cast<std::size_t>(l)] > hi[static_cast<std::size_t>(l)])
                return false;
        return true;
    }

    /// Mixed-radix rank of a monomial, grouped with the wedge index as
    /// basis index = rank * wedge_count + wedge.
    long long monomial_rank(const std::vector<int>& degrees) const {
        long long r = 0;
        for (int l = 0; l < vars(); ++l) {
            r *= static_cast<long long>(hi[static_cast<std::size_t>(l)] -
                                        lo[static_cast<std::size_t>(l)] + 1);
            r += degrees[static_cast<std::size_t>(l)] - lo[static_cast<std::size_t>(l)];
        }
        return r;
    }

    std::vector<std::vector<int>> monomials() const {
        std::vector<std::vector<int>> out;
        std::vector<int> d(lo.begin(), lo.end());
        while (true) {
            out.push_back(d);
            int pos = vars() - 1;
            while (pos >= 0 && d[static_cast<std::size_t>(pos)] == hi[static_cast<std::size_t>(pos)])
                --pos;
            if (pos < 0) break;
            ++d[static_cast<std::size_t>(pos)];
            for (int l = pos + 1; l < vars(); ++l)
                d[static_cast<std::size_t>(l)] = lo[static_cast<std::size_t>(l)];
        }
        return out;
    }
};

struct CechCell {
    std::string label;
    std::vector<int> members;  // cover-set indices, increasing
    SectionWindow window;
};

struct CechComplexData {
    int m = 1;
    int n = 1;
    int form_degree = 0;
    CoverKind cover = CoverKind::single_chart;
    int truncation = 0;
    std::vector<std::vector<CechCell>> levels;
    std::vector<ALinearMap> coboundaries;  // coboundaries[q] : C^q -> C^{q+1}

    long long level_dim(int q) const {
        long long d = 0;
        for (const auto& cell : levels[static_cast<std::size_t>(q)]) d += cell.window.dim();
        return d;
    }
};

namespace detail {

struct BasisElement {
    std::vector<int> degrees;
    int wedge = 0;  // index into increasing_tuples(n, k)
};

struct RestrictedBasis {
    std::vector<int> degrees;
    int wedge = 0;
    int coeff = 1;  // +-1
};

/// Restriction of a basis section of a level-0 cell into the overlap, in
/// the overlap's reference coordinates (the first chart's).
using RestrictionFn = RestrictedBasis (*)(const BasisElement&, int form_degree);

inline RestrictedBasis restrict_identity(const BasisElement& b, int) {
    return RestrictedBasis{b.degrees, b.wedge, 1};
}

/// Inversion chart of the projective line (rank 1): w = 1/z sends
/// w^d (dw)^k to (-1)^k z^{-d-2k} (dz)^k.
inline RestrictedBasis restrict_p1_inverted(const BasisElement& b, int form_degree) {
    RestrictedBasis r;
    r.degrees = {-b.degrees[0] - 2 * form_degree, };
    r.wedge = b.wedge;
    r.coeff = (form_degree % 2 == 0) ? 1 : -1;
    return r;
}

}  // namespace detail

/// Assemble the truncated alternating Cech complex for the cover and sheaf
/// (structure sheaf, or k-forms with the given degree).  The coboundary is
/// (delta c)_{ij} = c_j|_{ij} - c_i|_{ij}; entries are exact +-1 times the
/// algebra unit.
inline CechComplexData build_cech_complex(const CoverSpec& cover, SheafKind sheaf,
                                          int form_degree = 1) {
    const int k = (sheaf == SheafKind::structure) ? 0 : form_degree;
    if (k < 0) throw BadParameters("form degree must be >= 0");
    const int D = cover.truncation;
    if (D < 0) throw BadParameters("truncation must be >= 0");
    if (cover.m < 1) throw BadParameters("algebra dimension must be >= 1");

    CechComplexData data;
    data.m = cover.m;
    data.form_degree = k;
    data.cover = cover.kind;
    data.truncation = D;

    auto window_n = [&](int n, int lo, int hi) {
        SectionWindow w;
        w.lo.assign(static_cast<std::size_t>(n), lo);
        w.hi.assign(static_cast<std::size_t>(n), hi);
        w.form_degree = k;
        return w;
    };

    switch (cover.kind) {
        case CoverKind::single_chart: {
            data.n = cover.n;
            if (data.n < 1) throw BadParameters("need at least one variable");
            data.levels.push_back({CechCell{"0", {0}, window_n(data.n, 0, D)}});
            return data;
        }
        case CoverKind::p1_two_chart: {
            data.n = 1;
            if (cover.atlas && cover.atlas->n != 1)
                throw UnsupportedCover("projective-line cover needs a rank-1 atlas");
            const int lo = cover.overlap_window ? cover.overlap_window->first : -D - 2 * k;
            const int hi = cover.overlap_window ? cover.overlap_window->second : D;
            data.levels.push_back({CechCell{"0", {0}, window_n(1, 0, D)},
                                   CechCell{"1", {1}, window_n(1, 0, D)}});
            data.levels.push_back({CechCell{"01", {0, 1}, window_n(1, lo, hi)}});
            break;
        }
        case CoverKind::polydisk_two_cover: {
            data.n = cover.n;
            if (data.n < 1) throw BadParameters("need at least one variable");
            data.levels.push_back({CechCell{"0", {0}, window_n(data.n, 0, D)},
                                   CechCell{"1", {1}, window_n(data.n, 0, D)}});
            data.levels.push_back({CechCell{"01", {0, 1}, window_n(data.n, 0, D)}});
            break;
        }
    }

    // delta_0 : C^0 -> C^1 for the two-set covers
    const auto& level0 = data.levels[0];
    const auto& level1 = data.levels[1];
    const long long dim0 = data.level_dim(0);
    const long long dim1 = data.level_dim(1);
    ALinearMap delta(static_cast<int>(dim1), static_cast<int>(dim0), data.m);
    const Algebra alg(data.m);
    const long long wedge_count = wedge_rank(data.n, k);

    long long col_offset = 0;
    for (std::size_t cell_idx = 0; cell_idx < level0.size(); ++cell_idx) {
        const CechCell& cell = level0[cell_idx];
        const int sign = (cell.members[0] == 0) ? -1 : +1;  // (delta c)_{01} = c_1 - c_0
        detail::RestrictionFn restrict = detail::restrict_identity;
        if (cover.kind == CoverKind::p1_two_chart && cell.members[0] == 1)
            restrict = detail::restrict_p1_inverted;
        const SectionWindow& target = level1[0].window;
        long long local = 0;
        for (const auto& degrees : cell.window.monomials())
            for (int w = 0; w < wedge_count; ++w, ++local) {
                const detail::RestrictedBasis img = restrict(detail::BasisElement{degrees, w}, k);
                if (!target.contains(img.degrees))
                    throw WindowTooSmall("restriction of " + cell.label +
                                         " leaves the overlap window; raise the truncation");
                const long long row = target.monomial_rank(img.degrees) * wedge_count + img.wedge;
                delta.at(static_cast<int>(row), static_cast<int>(col_offset + local)) =
                    Cx(static_cast<double>(sign * img.coeff), 0.0) * alg.unit();
            }
        col_offset += cell.window.dim();
    }
    data.coboundaries.push_back(std::move(delta));
    return data;
}

/// delta_{q+1} o delta_q must vanish identically; entries are exact
/// integers for every supported cover, so the product is compared to zero
/// without tolerance.
inline bool verify_dsquared(const CechComplexData& data) {
    for (std::size_t q = 0; q + 1 < data.coboundaries.size(); ++q) {
        const ALinearMap prod =
            compose_linear(data.coboundaries[q + 1], data.coboundaries[q]);
        for (int r = 0; r < prod.rows(); ++r)
            for (int c = 0; c < prod.cols(); ++c)
                if (!prod.at(r, c).is_zero()) return false;
    }
    return true;
}

struct CohomologyReport {
    std::vector<long long> cochain_dims;           // per degree, free rank over A
    std::vector<std::vector<long long>> per_component;  // [component][degree]
    std::vector<long long> ranks;                  // common ranks when uniform
    bool uniform = true;
    long long euler = 0;  // alternating sum, identical for every component
    std::vector<std::pair<std::string, std::pair<int, int>>> windows;  // cell -> [lo, hi]
};

/// Per-component kernel/image dimension count.  The free-A-module rank is
/// reported when all Gelfand components agree; otherwise the per-component
/// vector is the complete answer (the module is then not free).
inline CohomologyReport cohomology_ranks(const CechComplexData& data, double rel_tol = 1e-9) {
    if (!verify_dsquared(data)) throw StructuralError("coboundary square is not zero");
    CohomologyReport report;
    const int n_levels = static_cast<int>(data.levels.size());
    for (int q = 0; q < n_levels; ++q) report.cochain_dims.push_back(data.level_dim(q));
    for (int q = 0; q < n_levels; ++q) {
        const auto& cell = data.levels[static_cast<std::size_t>(q)];
        for (const auto& c : cell)
            report.windows.emplace_back(c.label,
                                        std::make_pair(c.window.lo[0], c.window.hi[0]));
    }

    report.per_component.resize(static_cast<std::size_t>(data.m));
    for (int j = 0; j < data.m; ++j) {
        std::vector<int> delta_ranks(static_cast<std::size_t>(n_levels), 0);
        for (int q = 0; q < n_levels - 1; ++q)
            delta_ranks[static_cast<std::size_t>(q)] =
                matrix_rank(data.coboundaries[static_cast<std::size_t>(q)].component_matrix(j),
                            rel_tol);
        for (int q = 0; q < n_levels; ++q) {
            const long long dim_cq = report.cochain_dims[static_cast<std::size_t>(q)];
            const long long rank_q = (q < n_levels - 1) ? delta_ranks[static_cast<std::size_t>(q)] : 0;
            const long long rank_prev = (q > 0) ? delta_ranks[static_cast<std::size_t>(q - 1)] : 0;
            report.per_component[static_cast<std::size_t>(j)].push_back(dim_cq - rank_q - rank_prev);
        }
    }
    report.ranks = report.per_component[0];
    for (int j = 1; j < data.m; ++j)
        if (report.per_component[static_cast<std::size_t>(j)] != report.ranks) {
            report.uniform = false;
            break;
        }

    long long euler_c = 0;
    for (int q = 0; q < n_levels; ++q)
        euler_c += (q % 2 == 0 ? 1 : -1) * report.cochain_dims[static_cast<std::size_t>(q)];
    report.euler = euler_c;
    // rank-nullity makes the homology Euler sum agree per component; assert it
    for (int j = 0; j < data.m; ++j) {
        long long euler_h = 0;
        for (int q = 0; q < n_levels; ++q)
            euler_h += (q % 2 == 0 ? 1 : -1) *
                       report.per_component[static_cast<std::size_t>(j)][static_cast<std::size_t>(q)];
        if (euler_h != euler_c)
            throw StructuralError("Euler characteristic mismatch in component " + std::to_string(j));
    }
    return report;
}

struct VanishingDemo {
    CohomologyReport report;
    bool vanishing = true;  // H^q = 0 for all q >= 1 in every component
    std::string note;
};

/// Two overlapping sub-polydisks with identity transition and truncated
/// polynomial sections: higher cohomology of the structure sheaf vanishes
/// in this model.  Evidence at one truncation, not a proof about the
/// untruncated sheaf.
inline VanishingDemo polydisk_vanishing_demo(int truncation, int n, int m = 1) {
    if (n < 1 || n > 3) throw UnsupportedCover("polydisk demo supports 1 <= n <= 3");
    if (truncation < 0 || truncation > 8) throw UnsupportedCover("polydisk demo supports D <= 8");
    CoverSpec cover;
    cover.kind = CoverKind::polydisk_two_cover;
    cover.truncation = truncation;
    cover.n = n;
    cover.m = m;
    VanishingDemo demo;
    demo.report = cohomology_ranks(build_cech_complex(cover, SheafKind::structure));
    for (std::size_t j = 0; j < demo.report.per_component.size(); ++j)
        for (std::size_t q = 1; q < demo.report.per_component[j].size(); ++q)
            if (demo.report.per_component[j][q] != 0) demo.vanishing = false;
    demo.note = "truncated-model evidence only (degree window D = " + std::to_string(truncation) +
                "); not a proof about the full section spaces";
    return demo;
}

}  // namespace aholo
