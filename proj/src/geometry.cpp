#include "covlab/geometry.hpp"

#include <algorithm>

namespace covlab {

VarietyDesc make_variety(Ambient ambient, std::vector<Multinomial> equations, int declared_dim,
                         FieldSpec spec, std::optional<TypeDescriptor> type) {
    if (ambient.n < 0) throw ValidationError("negative ambient dimension");
    const int nc = ambient.coord_count();
    for (const auto& eq : equations) {
        if (eq.nvars() != nc)
            throw ValidationError("equation '" + eq.to_string() + "' has " +
                                  std::to_string(eq.nvars()) + " variables, ambient has " +
                                  std::to_string(nc) + " coordinates");
        if (eq.field() != spec)
            throw ValidationError("equation '" + eq.to_string() + "' is over a different field");
        if (ambient.kind == AmbientKind::Projective && !eq.is_homogeneous())
            throw ValidationError("projective equation '" + eq.to_string() + "' is not homogeneous");
    }
    if (declared_dim < 0 || declared_dim > ambient.n)
        throw ValidationError("declared dimension out of range for the ambient space");
    if (type.has_value()) {
        if (static_cast<std::int64_t>(equations.size()) > type->r)
            throw ValidationError("variety has more equations than its type descriptor allows");
        for (const auto& eq : equations) {
            auto d = eq.total_degree();
            if (d.has_value() && *d > type->d)
                throw ValidationError("equation degree exceeds the type descriptor bound");
        }
    }
    return VarietyDesc{ambient, std::move(equations), declared_dim, std::move(spec), type};
}

int point_chart(const Point& p, const FieldSpec& spec) {
    if (!p.projective) throw ValidationError("affine point has no chart index");
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        if (!spec.is_zero(p.coords[i])) return static_cast<int>(i);
    throw ValidationError("zero vector is not a projective point");
}

Point normalize_projective(std::vector<Element> coords, const FieldSpec& spec) {
    int lead = -1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!spec.is_zero(coords[i])) {
            lead = static_cast<int>(i);
            break;
        }
    }
    if (lead < 0) throw ValidationError("zero vector is not a projective point");
    Element scale = spec.inv(coords[lead]);
    for (auto& c : coords) c = spec.mul(c, scale);
    return Point{true, std::move(coords)};
}

std::string point_to_string(const Point& p, const FieldSpec& spec) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i) s += ", ";
        s += spec.element_to_string(p.coords[i]);
    }
    s += ")";
    return p.projective ? "P" + s : s;
}

VarietyDesc base_change_variety(const VarietyDesc& v, const FieldExtension& ext) {
    std::vector<Multinomial> eqs;
    eqs.reserve(v.equations.size());
    for (const auto& eq : v.equations) eqs.push_back(eq.base_change(ext.embedding));
    return VarietyDesc{v.ambient, std::move(eqs), v.declared_dim, ext.field, v.type};
}

namespace {

bool satisfies_all(const std::vector<Multinomial>& eqs, const std::vector<Element>& coords,
                   const FieldSpec& spec) {
    for (const auto& eq : eqs)
        if (!spec.is_zero(eq.evaluate(coords))) return false;
    return true;
}

// Odometer over `width` coordinates drawn from `elems`, last index fastest.
// Visits tuples in ascending lexicographic order.
template <typename Fn>
void for_each_tuple(const std::vector<Element>& elems, int width, std::vector<Element>& slots,
                    int begin, Fn&& fn) {
    if (width == 0) {
        fn();
        return;
    }
    std::vector<std::size_t> idx(width, 0);
    while (true) {
        for (int i = 0; i < width; ++i) slots[begin + i] = elems[idx[i]];
        fn();
        int i = width - 1;
        for (; i >= 0; --i) {
            if (++idx[i] < elems.size()) break;
            idx[i] = 0;
        }
        if (i < 0) break;
    }
}

} // namespace

std::vector<Point> enumerate_points(const VarietyDesc& v, int m, Budget budget) {
    if (m < 1) throw ValidationError("extension degree must be at least 1");
    const VarietyDesc* var = &v;
    VarietyDesc changed;
    if (m > 1) {
        changed = base_change_variety(v, extend_field(v.spec, m, budget));
        var = &changed;
    }
    const FieldSpec& f = var->spec;
    const int n = var->ambient.n;
    const std::int64_t q = f.q();

    std::vector<Point> out;
    if (var->ambient.kind == AmbientKind::Affine) {
        budget.require(saturating_pow(q, n, budget.limit));
        std::vector<Element> elems;
        if (n > 0) elems = f.enumerate(budget);
        std::vector<Element> slots(n, f.zero());
        for_each_tuple(elems, n, slots, 0, [&] {
            if (satisfies_all(var->equations, slots, f))
                out.push_back(Point{false, slots});
        });
        return out;
    }

    // projective: chart i has x_j = 0 for j < i, x_i = 1, free coordinates after
    std::int64_t estimate = 0;
    for (int i = 0; i <= n; ++i) {
        estimate += saturating_pow(q, n - i, budget.limit);
        if (estimate > budget.limit) break;
    }
    budget.require(estimate);
    std::vector<Element> elems;
    if (n > 0) elems = f.enumerate(budget);
    for (int chart = 0; chart <= n; ++chart) {
        std::vector<Element> slots(n + 1, f.zero());
        slots[chart] = f.one();
        for_each_tuple(elems, n - chart, slots, chart + 1, [&] {
            if (satisfies_all(var->equations, slots, f))
                out.push_back(Point{true, slots});
        });
    }
    return out;
}

bool contains(const VarietyDesc& v, const Point& p) {
    const int nc = v.ambient.coord_count();
    if (static_cast<int>(p.coords.size()) != nc)
        throw ValidationError("point has " + std::to_string(p.coords.size()) +
                              " coordinates, ambient has " + std::to_string(nc));
    if ((v.ambient.kind == AmbientKind::Projective) != p.projective)
        throw ValidationError("point kind does not match the ambient space");
    return satisfies_all(v.equations, p.coords, v.spec);
}

namespace {

// Evaluated Jacobian in the affine chart containing p: for projective
// varieties the equations are dehomogenized at the point's leading 1.
MatrixF chart_jacobian_at(const VarietyDesc& v, const Point& p, int* chart_n) {
    if (!contains(v, p))
        throw ValidationError("point " + point_to_string(p, v.spec) + " is not on the variety");
    if (v.ambient.kind == AmbientKind::Affine) {
        *chart_n = v.ambient.n;
        JacobianMatrix jm = jacobian(v.equations);
        if (v.equations.empty()) return MatrixF{v.spec, {}};
        return jm.evaluate_at(p.coords, v.spec);
    }
    int chart = point_chart(p, v.spec);
    *chart_n = v.ambient.n;
    std::vector<Multinomial> eqs;
    eqs.reserve(v.equations.size());
    for (const auto& eq : v.equations) eqs.push_back(eq.dehomogenize(chart));
    std::vector<Element> affine_coords;
    affine_coords.reserve(v.ambient.n);
    for (int j = 0; j <= v.ambient.n; ++j)
        if (j != chart) affine_coords.push_back(p.coords[j]);
    if (eqs.empty()) return MatrixF{v.spec, {}};
    return jacobian(eqs).evaluate_at(affine_coords, v.spec);
}

} // namespace

bool is_smooth_at(const VarietyDesc& v, const Point& p) {
    int n = 0;
    MatrixF jac = chart_jacobian_at(v, p, &n);
    int r = rank(jac);
    int codim = n - v.declared_dim;
    if (r > codim)
        throw ValidationError("Jacobian rank " + std::to_string(r) + " at " +
                              point_to_string(p, v.spec) + " exceeds ambient-minus-declared-dimension " +
                              std::to_string(codim) + "; declared dimension is inconsistent");
    return r == codim;
}

std::vector<std::vector<Element>> tangent_space(const VarietyDesc& v, const Point& p) {
    int n = 0;
    MatrixF jac = chart_jacobian_at(v, p, &n);
    return kernel_basis(jac, n);
}

VarietyDesc affine_chart(const VarietyDesc& v, int i) {
    if (v.ambient.kind != AmbientKind::Projective)
        throw ValidationError("affine_chart applies to projective varieties");
    if (i < 0 || i > v.ambient.n) throw ValidationError("chart index out of range");
    std::vector<Multinomial> eqs;
    eqs.reserve(v.equations.size());
    for (const auto& eq : v.equations) eqs.push_back(eq.dehomogenize(i));
    return VarietyDesc{Ambient{AmbientKind::Affine, v.ambient.n}, std::move(eqs), v.declared_dim,
                       v.spec, v.type};
}

} // namespace covlab
