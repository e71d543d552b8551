#include "covlab/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace covlab {

namespace {

// Terms of f re-indexed through `where`: variable a of f becomes where[a].
Multinomial remap_vars(const Multinomial& f, int new_nvars, const std::vector<int>& where) {
    Multinomial out(new_nvars, f.field());
    for (const auto& [e, c] : f.terms()) {
        std::vector<int> ne(new_nvars, 0);
        for (std::size_t a = 0; a < e.size(); ++a) ne[where[a]] += e[a];
        out.add_term(ne, c);
    }
    return out;
}

std::vector<Multinomial> projection_tuple(int take, int total, const FieldSpec& spec) {
    std::vector<Multinomial> tuple;
    tuple.reserve(take);
    for (int j = 0; j < take; ++j) tuple.push_back(Multinomial::variable(j, total, spec));
    return tuple;
}

} // namespace

CoverConstruction kummer_cover(const VarietyDesc& base, const Multinomial& u, std::int64_t ell,
                               CoverOptions opts) {
    if (base.ambient.kind != AmbientKind::Affine)
        throw ValidationError("the root-cover construction takes an affine base");
    if (u.field() != base.spec) throw ValidationError("u is over a different field");
    if (u.nvars() != base.ambient.n)
        throw ValidationError("u must be a function of the base coordinates");
    auto udeg = u.total_degree();
    if (!udeg.has_value() || *udeg < 1)
        throw ValidationError("u must be nonconstant");
    if (!is_prime(ell)) throw ValidationError("exponent " + std::to_string(ell) + " is not prime");
    if (ell == base.spec.p())
        throw ValidationError("exponent equals the characteristic: cover would be wildly inseparable");

    CoverConstruction result{CoverDesc{}, {}};
    if (std::gcd(ell, base.spec.q() - 1) != 1)
        result.warnings.push_back("gcd(" + std::to_string(ell) + ", q - 1) != 1 over " +
                                  base.spec.to_string() +
                                  ": the cover is valid but not exceptional over this field");

    const int n = base.ambient.n;
    std::vector<Multinomial> eqs;
    eqs.reserve(base.equations.size() + 1);
    for (const auto& eq : base.equations) eqs.push_back(eq.pad_vars(n + 1));
    Multinomial root_eq =
        Multinomial::variable(n, n + 1, base.spec).pow(static_cast<int>(ell)) - u.pad_vars(n + 1);
    eqs.push_back(std::move(root_eq));

    std::optional<TypeDescriptor> type;
    if (base.type.has_value())
        type = TypeDescriptor{base.type->n + 1, base.type->r + 1,
                              std::max({base.type->d, ell, static_cast<std::int64_t>(*udeg)})};

    VarietyDesc source = make_variety(Ambient{AmbientKind::Affine, n + 1}, std::move(eqs),
                                      base.declared_dim, base.spec, type);

    // stand-in for the uniformizing-parameter hypothesis on u: the total
    // space must be smooth at every rational point we can afford to check
    for (int m = 1; m <= opts.verify_depth; ++m) {
        try {
            VarietyDesc local =
                m == 1 ? source
                       : base_change_variety(source, extend_field(source.spec, m, opts.budget));
            for (const auto& p : enumerate_points(local, 1, opts.budget)) {
                if (!is_smooth_at(local, p))
                    throw ValidationError("total space x" + std::to_string(n) + "^" +
                                          std::to_string(ell) + " = u is singular at " +
                                          point_to_string(p, local.spec) +
                                          "; u is not uniformizing there");
            }
        } catch (const BudgetError&) {
            break;
        }
    }

    result.cover = make_cover(std::move(source), base, {projection_tuple(n, n + 1, base.spec)},
                              ell, opts);
    return result;
}

CoverConstruction product_cover(const VarietyDesc& y, const VarietyDesc& v, CoverOptions opts) {
    if (y.spec != v.spec) throw ValidationError("product factors are over different fields");
    if (y.ambient.kind != v.ambient.kind)
        throw ValidationError("product factors must both be affine or both projective");

    std::vector<Point> v_points = enumerate_points(v, 1, opts.budget);
    if (v_points.size() < 2)
        throw ValidationError("second factor has " + std::to_string(v_points.size()) +
                              " rational points; the construction needs at least 2");

    CoverConstruction result{CoverDesc{}, {}};
    if (v.declared_dim > 0)
        result.warnings.push_back(
            "second factor has positive dimension: the projection is not a finite cover and is "
            "declared with unbounded fiber size");

    const FieldSpec& spec = y.spec;
    if (y.ambient.kind == AmbientKind::Affine) {
        const int ny = y.ambient.n, nv = v.ambient.n;
        std::vector<Multinomial> eqs;
        eqs.reserve(y.equations.size() + v.equations.size());
        for (const auto& eq : y.equations) eqs.push_back(eq.pad_vars(ny + nv));
        std::vector<int> shift(nv);
        for (int a = 0; a < nv; ++a) shift[a] = ny + a;
        for (const auto& eq : v.equations) eqs.push_back(remap_vars(eq, ny + nv, shift));
        VarietyDesc source = make_variety(Ambient{AmbientKind::Affine, ny + nv}, std::move(eqs),
                                          y.declared_dim + v.declared_dim, spec, std::nullopt);
        result.cover = make_cover(std::move(source), y, {projection_tuple(ny, ny + nv, spec)},
                                  std::nullopt, opts);
        return result;
    }

    // Segre coordinates z_ij = x_i y_j, flattened as z[i * (nv + 1) + j]
    const int ny = y.ambient.n, nv = v.ambient.n;
    const int cols = nv + 1;
    const int total = (ny + 1) * cols;
    auto z = [&](int i, int j) { return i * cols + j; };

    std::vector<Multinomial> eqs;
    for (int i = 0; i < ny + 1; ++i) {
        for (int k = i + 1; k < ny + 1; ++k) {
            for (int j = 0; j < cols; ++j) {
                for (int l = j + 1; l < cols; ++l) {
                    Multinomial minor =
                        Multinomial::variable(z(i, j), total, spec) *
                            Multinomial::variable(z(k, l), total, spec) -
                        Multinomial::variable(z(i, l), total, spec) *
                            Multinomial::variable(z(k, j), total, spec);
                    eqs.push_back(std::move(minor));
                }
            }
        }
    }
    for (const auto& eq : y.equations) {
        for (int j = 0; j < cols; ++j) {
            std::vector<int> where(ny + 1);
            for (int i = 0; i <= ny; ++i) where[i] = z(i, j);
            eqs.push_back(remap_vars(eq, total, where));
        }
    }
    for (const auto& eq : v.equations) {
        for (int i = 0; i <= ny; ++i) {
            std::vector<int> where(nv + 1);
            for (int j = 0; j <= nv; ++j) where[j] = z(i, j);
            eqs.push_back(remap_vars(eq, total, where));
        }
    }

    VarietyDesc source = make_variety(Ambient{AmbientKind::Projective, total - 1}, std::move(eqs),
                                      y.declared_dim + v.declared_dim, spec, std::nullopt);

    // chart (i, j): the j-th column recovers the first factor
    std::vector<std::vector<Multinomial>> charts;
    charts.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i <= ny; ++i) {
        for (int j = 0; j < cols; ++j) {
            std::vector<Multinomial> tuple;
            tuple.reserve(ny + 1);
            for (int a = 0; a <= ny; ++a)
                tuple.push_back(Multinomial::variable(z(a, j), total, spec));
            charts.push_back(std::move(tuple));
        }
    }
    result.cover = make_cover(std::move(source), y, std::move(charts), std::nullopt, opts);
    return result;
}

namespace {

// Exponent vectors of all degree-d monomials in nvars variables, ascending
// lexicographically.
void monomials_of_degree(int nvars, int d, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == nvars - 1) {
        int used = std::accumulate(current.begin(), current.end(), 0);
        current.push_back(d - used);
        out.push_back(current);
        current.pop_back();
        return;
    }
    int used = std::accumulate(current.begin(), current.end(), 0);
    for (int e = 0; e <= d - used; ++e) {
        current.push_back(e);
        monomials_of_degree(nvars, d, current, out);
        current.pop_back();
    }
}

Element element_from_index(const FieldSpec& spec, std::uint64_t idx) {
    std::vector<std::int64_t> coeffs(spec.k(), 0);
    for (int i = 0; i < spec.k(); ++i) {
        coeffs[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(spec.p()));
        idx /= static_cast<std::uint64_t>(spec.p());
    }
    return spec.make_element(std::move(coeffs));
}

Element random_element(const FieldSpec& spec, std::mt19937_64& rng) {
    return element_from_index(spec, rng() % static_cast<std::uint64_t>(spec.q()));
}

Multinomial form_from_coeffs(const std::vector<std::vector<int>>& monos,
                             const std::vector<Element>& coeffs, int nvars,
                             const FieldSpec& spec) {
    Multinomial h(nvars, spec);
    for (std::size_t c = 0; c < monos.size(); ++c) h.add_term(monos[c], coeffs[c]);
    return h;
}

// All rational points of Z are smooth and, in fill mode, some point of X over
// the quadratic extension lies off H (else H likely contains a component).
bool section_acceptable(const VarietyDesc& x, const VarietyDesc& z, const Multinomial& h,
                        SectionMode mode, Budget budget) {
    try {
        for (const auto& p : enumerate_points(z, 1, budget))
            if (!is_smooth_at(z, p)) return false;
    } catch (const ValidationError&) {
        return false; // rank contradiction: declared dimension untenable for this H
    }
    try {
        FieldExtension ext = extend_field(x.spec, 2, budget);
        Multinomial h2 = h.base_change(ext.embedding);
        bool some_point_off = false;
        for (const auto& p : enumerate_points(x, 2, budget)) {
            if (!ext.field.is_zero(h2.evaluate(p.coords))) {
                some_point_off = true;
                break;
            }
        }
        if (mode == SectionMode::Fill && !some_point_off) return false;
        if (mode == SectionMode::Avoid) {
            for (const auto& p : enumerate_points(z, 2, budget))
                if (!is_smooth_at(z, p)) return false;
        }
    } catch (const BudgetError&) {
        // quadratic-extension checks are best effort
    } catch (const ValidationError&) {
        return false;
    }
    return true;
}

} // namespace

SectionSearchResult search_section(const VarietyDesc& x, int dmax, SectionMode mode,
                                   std::int64_t trials, std::uint64_t seed, Budget budget) {
    if (x.ambient.kind != AmbientKind::Projective)
        throw ValidationError("section search takes a projective variety");
    if (x.declared_dim < 1)
        throw ValidationError("section search needs a source of dimension at least 1");
    if (dmax < 1) throw ValidationError("degree cap must be at least 1");
    if (trials < 1) throw ValidationError("trial count must be at least 1");

    SectionSearchResult result;
    result.seed = seed;
    result.mode = mode;
    result.dmax = dmax;

    const FieldSpec& spec = x.spec;
    const int nvars = x.ambient.n + 1;
    std::vector<Point> pts = enumerate_points(x, 1, budget);
    std::mt19937_64 rng(seed);

    // monomial bases and, for fill mode, the kernel of the evaluation matrix
    std::vector<std::vector<std::vector<int>>> monos_by_degree(dmax + 1);
    std::vector<std::vector<std::vector<Element>>> fill_basis(dmax + 1);
    for (int d = 1; d <= dmax; ++d) {
        std::vector<int> cur;
        monomials_of_degree(nvars, d, cur, monos_by_degree[d]);
        if (mode == SectionMode::Fill) {
            MatrixF m;
            m.spec = spec;
            for (const auto& p : pts) {
                std::vector<Element> row;
                row.reserve(monos_by_degree[d].size());
                for (const auto& e : monos_by_degree[d]) {
                    Element value = spec.one();
                    for (int j = 0; j < nvars; ++j)
                        if (e[j] > 0) value = spec.mul(value, spec.pow(p.coords[j], e[j]));
                    row.push_back(std::move(value));
                }
                m.rows.push_back(std::move(row));
            }
            fill_basis[d] =
                kernel_basis(m, static_cast<int>(monos_by_degree[d].size()));
        }
    }

    for (std::int64_t trial = 0; trial < trials; ++trial) {
        result.trials_run = trial + 1;
        const int d = static_cast<int>(trial % dmax) + 1;
        const auto& monos = monos_by_degree[d];

        std::vector<Element> coeffs;
        if (mode == SectionMode::Fill) {
            const auto& basis = fill_basis[d];
            if (basis.empty()) continue; // no nonzero form vanishes on all points
            coeffs.assign(monos.size(), spec.zero());
            bool nonzero = false;
            for (const auto& vec : basis) {
                Element weight = random_element(spec, rng);
                if (spec.is_zero(weight)) continue;
                nonzero = true;
                for (std::size_t c = 0; c < coeffs.size(); ++c)
                    coeffs[c] = spec.add(coeffs[c], spec.mul(weight, vec[c]));
            }
            if (!nonzero) continue;
        } else {
            coeffs.reserve(monos.size());
            bool nonzero = false;
            for (std::size_t c = 0; c < monos.size(); ++c) {
                coeffs.push_back(random_element(spec, rng));
                nonzero = nonzero || !spec.is_zero(coeffs.back());
            }
            if (!nonzero) continue;
        }

        Multinomial h = form_from_coeffs(monos, coeffs, nvars, spec);
        if (mode == SectionMode::Avoid) {
            bool hits = false;
            for (const auto& p : pts) {
                if (spec.is_zero(h.evaluate(p.coords))) {
                    hits = true;
                    break;
                }
            }
            if (hits) continue;
        }

        std::vector<Multinomial> eqs = x.equations;
        eqs.push_back(h);
        std::optional<TypeDescriptor> type;
        if (x.type.has_value())
            type = TypeDescriptor{x.type->n, x.type->r + 1,
                                  std::max(x.type->d, static_cast<std::int64_t>(d))};
        VarietyDesc z;
        try {
            z = make_variety(x.ambient, std::move(eqs), x.declared_dim - 1, spec, type);
        } catch (const ValidationError&) {
            continue;
        }

        // the mode's point condition, re-verified by enumeration
        std::vector<Point> zpts = enumerate_points(z, 1, budget);
        if (mode == SectionMode::Fill) {
            if (zpts.size() != pts.size() ||
                !std::is_permutation(zpts.begin(), zpts.end(), pts.begin()))
                continue;
        } else if (!zpts.empty()) {
            continue;
        }
        if (!section_acceptable(x, z, h, mode, budget)) continue;

        result.section = std::move(z);
        result.form = std::move(h);
        result.found_at_trial = trial;
        return result;
    }
    result.trials_run = trials;
    return result;
}

} // namespace covlab
