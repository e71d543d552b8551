#include "covlab/covers.hpp"

#include <algorithm>
#include <numeric>

namespace covlab {

namespace {

// A cover together with everything base-changed to the degree-m extension.
struct ExtContext {
    int m = 1;
    FieldExtension ext;
    VarietyDesc source;
    VarietyDesc target;
    std::vector<std::vector<Multinomial>> maps;
    const CoverDesc* cover = nullptr;
};

ExtContext make_context(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx;
    ctx.m = m;
    ctx.cover = &f;
    ctx.ext = extend_field(f.source.spec, m, budget);
    if (m == 1) {
        ctx.source = f.source;
        ctx.target = f.target;
        ctx.maps = f.chart_maps;
        return ctx;
    }
    ctx.source = base_change_variety(f.source, ctx.ext);
    ctx.target = base_change_variety(f.target, ctx.ext);
    ctx.maps.reserve(f.chart_maps.size());
    for (const auto& tuple : f.chart_maps) {
        std::vector<Multinomial> changed;
        changed.reserve(tuple.size());
        for (const auto& g : tuple) changed.push_back(g.base_change(ctx.ext.embedding));
        ctx.maps.push_back(std::move(changed));
    }
    return ctx;
}

bool projective_source(const ExtContext& ctx) {
    return ctx.source.ambient.kind == AmbientKind::Projective;
}

// Image of P under the chart tuple `which`, without target membership check.
// For projective sources P must satisfy coords[which] == 1.
Point raw_image(const ExtContext& ctx, const Point& p, int which) {
    const FieldSpec& fld = ctx.source.spec;
    const auto& tuple = ctx.maps[which];
    std::vector<Element> values;
    values.reserve(tuple.size());
    for (const auto& g : tuple) values.push_back(g.evaluate(p.coords));
    if (ctx.target.ambient.kind == AmbientKind::Projective) {
        bool all_zero = std::all_of(values.begin(), values.end(),
                                    [&](const Element& e) { return fld.is_zero(e); });
        if (all_zero)
            throw ValidationError("map is undefined (all coordinates vanish) at " +
                                  point_to_string(p, fld));
        return normalize_projective(std::move(values), fld);
    }
    return Point{false, std::move(values)};
}

Point apply_in(const ExtContext& ctx, const Point& p) {
    int which = projective_source(ctx) ? point_chart(p, ctx.source.spec) : 0;
    Point image = raw_image(ctx, p, which);
    if (!contains(ctx.target, image))
        throw ValidationError("cover definition error: image " +
                              point_to_string(image, ctx.target.spec) + " of " +
                              point_to_string(p, ctx.source.spec) + " is off the target");
    return image;
}

std::vector<Point> source_points(const ExtContext& ctx, Budget budget) {
    return enumerate_points(ctx.source, 1, budget);
}

std::vector<Point> target_points(const ExtContext& ctx, Budget budget) {
    return enumerate_points(ctx.target, 1, budget);
}

// Fibers keyed by image point, in image order; values keep enumeration order.
std::map<Point, std::vector<Point>> bucket_by_image(const ExtContext& ctx,
                                                    const std::vector<Point>& xs) {
    std::map<Point, std::vector<Point>> buckets;
    for (const auto& p : xs) buckets[apply_in(ctx, p)].push_back(p);
    return buckets;
}

// Differential data for ramification: per (source chart, image chart) the
// polynomial matrix whose rank at a point equals the rank of the local
// differential there. For affine covers this is the plain Jacobian. For
// projective covers, with chart-local map g and image leading index i0, the
// entry (a, l) is  d(g_a)/d(u_l) * g_{i0} - g_a * d(g_{i0})/d(u_l), which has
// the rank of the dehomogenized differential wherever g_{i0} does not vanish.
class DifferentialTable {
public:
    explicit DifferentialTable(const ExtContext& ctx) : ctx_(&ctx) {}

    // Rank of the differential at p restricted to the given tangent basis.
    int restricted_rank(const Point& p, int image_chart,
                        const std::vector<std::vector<Element>>& tangent) {
        const FieldSpec& fld = ctx_->source.spec;
        const auto& mat = matrix_for(projective_source(*ctx_) ? point_chart(p, fld) : 0, image_chart);
        std::vector<Element> local = local_coords(p);
        // evaluate, then multiply by the tangent basis (columns)
        MatrixF evaluated;
        evaluated.spec = fld;
        evaluated.rows.reserve(mat.size());
        for (const auto& row : mat) {
            std::vector<Element> r;
            r.reserve(row.size());
            for (const auto& entry : row) r.push_back(entry.evaluate(local));
            evaluated.rows.push_back(std::move(r));
        }
        MatrixF restricted;
        restricted.spec = fld;
        restricted.rows.reserve(evaluated.rows.size());
        for (const auto& row : evaluated.rows) {
            std::vector<Element> r;
            r.reserve(tangent.size());
            for (const auto& v : tangent) {
                Element acc = fld.zero();
                for (std::size_t j = 0; j < v.size(); ++j)
                    acc = fld.add(acc, fld.mul(row[j], v[j]));
                r.push_back(std::move(acc));
            }
            restricted.rows.push_back(std::move(r));
        }
        return rank(std::move(restricted));
    }

    std::vector<Element> local_coords(const Point& p) const {
        if (!projective_source(*ctx_)) return p.coords;
        int chart = point_chart(p, ctx_->source.spec);
        std::vector<Element> local;
        local.reserve(p.coords.size() - 1);
        for (std::size_t j = 0; j < p.coords.size(); ++j)
            if (static_cast<int>(j) != chart) local.push_back(p.coords[j]);
        return local;
    }

private:
    const ExtContext* ctx_;
    std::map<std::pair<int, int>, std::vector<std::vector<Multinomial>>> cache_;

    const std::vector<std::vector<Multinomial>>& matrix_for(int src_chart, int image_chart) {
        auto key = std::make_pair(src_chart, image_chart);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        std::vector<std::vector<Multinomial>> mat;
        if (!projective_source(*ctx_)) {
            const auto& tuple = ctx_->maps[0];
            JacobianMatrix jm = jacobian(tuple);
            mat = std::move(jm.entries);
        } else {
            // dehomogenize the chart tuple at the source chart, then form the
            // quotient-rule numerators against the image-chart coordinate
            std::vector<Multinomial> local;
            local.reserve(ctx_->maps[src_chart].size());
            for (const auto& g : ctx_->maps[src_chart]) local.push_back(g.dehomogenize(src_chart));
            const int nvars = ctx_->source.ambient.n;
            const Multinomial& pivot = local[image_chart];
            std::vector<Multinomial> pivot_partials;
            pivot_partials.reserve(nvars);
            for (int l = 0; l < nvars; ++l) pivot_partials.push_back(pivot.partial(l));
            for (const auto& g : local) {
                std::vector<Multinomial> row;
                row.reserve(nvars);
                for (int l = 0; l < nvars; ++l)
                    row.push_back(g.partial(l) * pivot - g * pivot_partials[l]);
                mat.push_back(std::move(row));
            }
        }
        return cache_.emplace(std::move(key), std::move(mat)).first->second;
    }
};

struct RamScan {
    std::set<Point> ramified;
    std::int64_t source_count = 0;
};

RamScan scan_ramification(const ExtContext& ctx, const std::vector<Point>& xs) {
    RamScan scan;
    scan.source_count = static_cast<std::int64_t>(xs.size());
    DifferentialTable table(ctx);
    const int dim = ctx.source.declared_dim;
    for (const auto& p : xs) {
        auto tangent = tangent_space(ctx.source, p);
        const int tdim = static_cast<int>(tangent.size());
        if (tdim > dim)
            throw SingularSourcePointError("source point " + point_to_string(p, ctx.source.spec) +
                                           " is singular (tangent dimension " + std::to_string(tdim) +
                                           " exceeds declared dimension " + std::to_string(dim) + ")");
        if (tdim < dim)
            throw ValidationError("tangent dimension " + std::to_string(tdim) + " at " +
                                  point_to_string(p, ctx.source.spec) +
                                  " is below the declared dimension; declaration is inconsistent");
        if (dim == 0) continue; // zero-dimensional sources are never ramified
        Point image = apply_in(ctx, p);
        int image_chart =
            ctx.target.ambient.kind == AmbientKind::Projective ? point_chart(image, ctx.target.spec) : 0;
        if (table.restricted_rank(p, image_chart, tangent) < dim) scan.ramified.insert(p);
    }
    return scan;
}

} // namespace

// --- construction & validation ---

CoverDesc make_cover(VarietyDesc source, VarietyDesc target,
                     std::vector<std::vector<Multinomial>> chart_maps,
                     std::optional<std::int64_t> degree, CoverOptions opts) {
    if (source.spec != target.spec)
        throw ValidationError("source and target are over different fields");
    if (source.ambient.kind != target.ambient.kind)
        throw ValidationError("mixed affine/projective covers are not supported");

    const int src_coords = source.ambient.coord_count();
    const int tgt_coords = target.ambient.coord_count();
    const bool projective = source.ambient.kind == AmbientKind::Projective;

    if (chart_maps.empty()) throw ValidationError("cover has no map");
    if (!projective && chart_maps.size() != 1)
        throw ValidationError("affine cover takes exactly one map tuple");
    if (projective && chart_maps.size() == 1) {
        // one tuple for all charts: must be homogeneous of a common degree
        std::optional<int> common;
        for (const auto& g : chart_maps[0]) {
            if (!g.is_homogeneous())
                throw ValidationError("single-tuple projective map must be homogeneous: '" +
                                      g.to_string() + "' is not");
            auto d = g.total_degree();
            if (!d.has_value()) continue;
            if (common.has_value() && *common != *d)
                throw ValidationError("single-tuple projective map has mixed degrees");
            common = d;
        }
        chart_maps.assign(static_cast<std::size_t>(source.ambient.n) + 1, chart_maps[0]);
    }
    if (projective && chart_maps.size() != static_cast<std::size_t>(source.ambient.n) + 1)
        throw ValidationError("projective cover needs one map tuple per chart (" +
                              std::to_string(source.ambient.n + 1) + "), got " +
                              std::to_string(chart_maps.size()));
    for (const auto& tuple : chart_maps) {
        if (static_cast<int>(tuple.size()) != tgt_coords)
            throw ValidationError("map tuple has " + std::to_string(tuple.size()) +
                                  " coordinates, target has " + std::to_string(tgt_coords));
        for (const auto& g : tuple) {
            if (g.nvars() != src_coords)
                throw ValidationError("map coordinate '" + g.to_string() + "' has " +
                                      std::to_string(g.nvars()) + " variables, source has " +
                                      std::to_string(src_coords));
            if (g.field() != source.spec)
                throw ValidationError("map coordinate '" + g.to_string() +
                                      "' is over a different field");
        }
    }
    if (degree.has_value()) {
        if (*degree < 1) throw ValidationError("declared degree must be at least 1");
        if (source.declared_dim != target.declared_dim)
            throw ValidationError("a finite cover preserves dimension: source dim " +
                                  std::to_string(source.declared_dim) + " vs target dim " +
                                  std::to_string(target.declared_dim));
    }

    CoverDesc cover{std::move(source), std::move(target), std::move(chart_maps), degree, 0};

    // map-into-target, chart agreement, and fiber bound up to verify_depth;
    // depths the budget cannot afford are skipped, not failed
    for (int m = 1; m <= opts.verify_depth; ++m) {
        try {
            ExtContext ctx = make_context(cover, m, opts.budget);
            std::vector<Point> xs = source_points(ctx, opts.budget);
            std::map<Point, std::int64_t> fiber_size;
            for (const auto& p : xs) {
                Point image = apply_in(ctx, p); // throws with witness if off target
                ++fiber_size[image];
                if (projective) {
                    const FieldSpec& fld = ctx.source.spec;
                    for (int c = 0; c <= cover.source.ambient.n; ++c) {
                        if (fld.is_zero(p.coords[c])) continue;
                        Element scale = fld.inv(p.coords[c]);
                        Point rescaled = p;
                        for (auto& e : rescaled.coords) e = fld.mul(e, scale);
                        Point other = raw_image(ctx, rescaled, c);
                        if (other != image)
                            throw ValidationError("chart maps disagree at " +
                                                  point_to_string(p, fld) + ": chart " +
                                                  std::to_string(c) + " gives " +
                                                  point_to_string(other, fld));
                    }
                }
            }
            if (cover.degree.has_value()) {
                for (const auto& [q, size] : fiber_size) {
                    if (size > *cover.degree)
                        throw ValidationError("fiber over " + point_to_string(q, ctx.target.spec) +
                                              " has " + std::to_string(size) +
                                              " points, exceeding the declared degree " +
                                              std::to_string(*cover.degree));
                }
            }
            cover.verified_depth = m;
        } catch (const BudgetError&) {
            break;
        }
    }
    return cover;
}

Point apply(const CoverDesc& f, const Point& p) {
    ExtContext ctx = make_context(f, 1, Budget{});
    if (!contains(ctx.source, p))
        throw ValidationError("point " + point_to_string(p, f.source.spec) + " is not on the source");
    return apply_in(ctx, p);
}

std::set<Point> image_set(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    std::set<Point> images;
    for (const auto& p : source_points(ctx, budget)) images.insert(apply_in(ctx, p));
    return images;
}

std::vector<Point> fiber(const CoverDesc& f, const Point& q, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    if (!contains(ctx.target, q))
        throw ValidationError("point " + point_to_string(q, ctx.target.spec) +
                              " is not on the target");
    std::vector<Point> result;
    for (const auto& p : source_points(ctx, budget))
        if (apply_in(ctx, p) == q) result.push_back(p);
    return result;
}

bool injective_on(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    std::vector<Point> xs = source_points(ctx, budget);
    std::set<Point> images;
    for (const auto& p : xs) images.insert(apply_in(ctx, p));
    return images.size() == xs.size();
}

bool surjective_on(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    std::set<Point> images;
    for (const auto& p : source_points(ctx, budget)) images.insert(apply_in(ctx, p));
    std::vector<Point> ys = target_points(ctx, budget);
    if (images.size() != ys.size()) return false;
    std::sort(ys.begin(), ys.end());
    return std::equal(images.begin(), images.end(), ys.begin(), ys.end());
}

std::vector<Point> ramification_points(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    std::vector<Point> xs = source_points(ctx, budget);
    RamScan scan = scan_ramification(ctx, xs);
    if (scan.source_count > 0 &&
        scan.ramified.size() == static_cast<std::size_t>(scan.source_count))
        throw NotGenericallyEtaleError(m);
    return {scan.ramified.begin(), scan.ramified.end()};
}

std::vector<Point> branch_points(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    std::vector<Point> xs = source_points(ctx, budget);
    RamScan scan = scan_ramification(ctx, xs);
    if (scan.source_count > 0 &&
        scan.ramified.size() == static_cast<std::size_t>(scan.source_count))
        throw NotGenericallyEtaleError(m);
    std::set<Point> images;
    for (const auto& p : scan.ramified) images.insert(apply_in(ctx, p));
    return {images.begin(), images.end()};
}

std::vector<PairClass> fiber_product_pairs(const CoverDesc& f, int m, Budget budget) {
    ExtContext ctx = make_context(f, m, budget);
    std::vector<Point> xs = source_points(ctx, budget);
    auto buckets = bucket_by_image(ctx, xs);

    std::int64_t pair_total = 0;
    for (const auto& [q, fib] : buckets) {
        pair_total += static_cast<std::int64_t>(fib.size()) * static_cast<std::int64_t>(fib.size());
        if (pair_total > budget.limit) break;
    }
    budget.require(pair_total);

    RamScan scan = scan_ramification(ctx, xs);
    std::vector<PairClass> out;
    out.reserve(static_cast<std::size_t>(pair_total));
    for (const auto& [q, fib] : buckets) {
        for (const auto& p1 : fib) {
            for (const auto& p2 : fib) {
                PairKind kind;
                if (p1 == p2)
                    kind = PairKind::Diagonal;
                else if (scan.ramified.count(p1) || scan.ramified.count(p2))
                    kind = PairKind::OffDiagonalRamified;
                else
                    kind = PairKind::OffDiagonalUnramified;
                out.push_back(PairClass{p1, p2, kind});
            }
        }
    }
    return out;
}

std::string verdict_to_string(const StarReport& r) {
    switch (r.verdict) {
        case VerdictKind::ConsistentWithExceptional:
            return "consistent-with-exceptional up to " + std::to_string(r.max_ext);
        case VerdictKind::RefutedAt:
            return "refuted-at " + std::to_string(r.refuted_at);
        case VerdictKind::Indeterminate:
            return "indeterminate";
    }
    return "indeterminate";
}

StarReport star_report(const CoverDesc& f, int max_ext, Budget budget) {
    if (max_ext < 1) throw ValidationError("max extension degree must be at least 1");
    StarReport report;
    report.max_ext = max_ext;
    for (int m = 1; m <= max_ext; ++m) {
        StarRow row;
        row.m = m;
        try {
            ExtContext ctx = make_context(f, m, budget);
            std::vector<Point> xs = source_points(ctx, budget);
            std::vector<Point> ys = target_points(ctx, budget);
            row.x_count = static_cast<std::int64_t>(xs.size());
            row.y_count = static_cast<std::int64_t>(ys.size());

            std::set<Point> images;
            std::map<Point, std::int64_t> fiber_size;
            for (const auto& p : xs) {
                Point image = apply_in(ctx, p);
                images.insert(image);
                ++fiber_size[image];
            }
            row.injective = images.size() == xs.size();
            std::vector<Point> ys_sorted = ys;
            std::sort(ys_sorted.begin(), ys_sorted.end());
            row.surjective = images.size() == ys_sorted.size() &&
                             std::equal(images.begin(), images.end(), ys_sorted.begin(), ys_sorted.end());
            std::int64_t pair_total = 0;
            for (const auto& [q, size] : fiber_size) {
                row.max_fiber = std::max(row.max_fiber, size);
                pair_total += size * size;
            }
            row.offdiag_pairs = pair_total - row.x_count;

            RamScan scan = scan_ramification(ctx, xs);
            row.ramified_count = static_cast<std::int64_t>(scan.ramified.size());
            row.all_points_ramified = row.x_count > 0 && row.ramified_count == row.x_count;
        } catch (const BudgetError& e) {
            report.truncated = true;
            report.truncation_note = "truncated at extension degree " + std::to_string(m) + ": " +
                                     e.what();
            break;
        }
        report.rows.push_back(row);
    }

    report.refuted_at = 0;
    for (const auto& row : report.rows) {
        if (!(row.injective && row.surjective)) {
            report.refuted_at = row.m;
            break;
        }
    }
    if (report.refuted_at > 0)
        report.verdict = VerdictKind::RefutedAt;
    else if (!report.truncated && static_cast<int>(report.rows.size()) == max_ext)
        report.verdict = VerdictKind::ConsistentWithExceptional;
    else
        report.verdict = VerdictKind::Indeterminate;

    report.inseparability_suspected =
        !report.rows.empty() &&
        std::all_of(report.rows.begin(), report.rows.end(),
                    [](const StarRow& r) { return r.all_points_ramified; });
    return report;
}

KummerVerdict kummer_exceptionality_oracle(std::int64_t ell, std::int64_t q) {
    if (!is_prime(ell)) throw ValidationError("exponent " + std::to_string(ell) + " is not prime");
    if (q < 2) throw ValidationError("field size must be at least 2");
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q; // q itself prime
    std::int64_t rest = q;
    while (rest % p == 0) rest /= p;
    if (rest != 1)
        throw ValidationError(std::to_string(q) + " is not a prime power");
    if (ell == p)
        throw ValidationError("exponent equals the characteristic: cover is wildly inseparable");
    return std::gcd(ell, q - 1) == 1 ? KummerVerdict::Exceptional : KummerVerdict::NotExceptional;
}

} // namespace covlab
