#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covlab/mpoly.hpp"

namespace covlab {

enum class AmbientKind { Affine, Projective };

// Ambient space A^n or P^n. Projective space has n+1 homogeneous coordinates.
struct Ambient {
    AmbientKind kind = AmbientKind::Affine;
    int n = 0;

    int coord_count() const { return kind == AmbientKind::Projective ? n + 1 : n; }
    bool operator==(const Ambient& o) const { return kind == o.kind && n == o.n; }
};

// Realizability bound: vanishing locus of at most r forms of degree at most d
// in an ambient space of dimension n.
struct TypeDescriptor {
    std::int64_t n = 0, r = 0, d = 0;
    bool operator==(const TypeDescriptor& o) const { return n == o.n && r == o.r && d == o.d; }
};

// Rational point. Projective points are stored normalized: nonzero, with the
// first nonzero coordinate scaled to 1.
struct Point {
    bool projective = false;
    std::vector<Element> coords;

    bool operator==(const Point& o) const { return coords == o.coords; }
    bool operator!=(const Point& o) const { return coords != o.coords; }
    bool operator<(const Point& o) const { return coords < o.coords; }
};

// Vanishing locus of a list of polynomials, with a user-declared dimension.
// Projective equations must be homogeneous.
struct VarietyDesc {
    Ambient ambient;
    std::vector<Multinomial> equations;
    int declared_dim = 0;
    FieldSpec spec;
    std::optional<TypeDescriptor> type;
};

// Validates variable counts, homogeneity, dimension range, and descriptor
// consistency (|equations| <= r, degrees <= d).
VarietyDesc make_variety(Ambient ambient, std::vector<Multinomial> equations, int declared_dim,
                         FieldSpec spec, std::optional<TypeDescriptor> type = std::nullopt);

// Chart index of a normalized projective point: position of the leading 1.
int point_chart(const Point& p, const FieldSpec& spec);

// Scales so the first nonzero coordinate is 1. Throws on the zero vector.
Point normalize_projective(std::vector<Element> coords, const FieldSpec& spec);

std::string point_to_string(const Point& p, const FieldSpec& spec);

// The variety with coefficients pushed through a field embedding.
VarietyDesc base_change_variety(const VarietyDesc& v, const FieldExtension& ext);

// All F_{q^m}-rational points (q = |v.spec|), in deterministic order: affine
// coordinate tuples ascending lexicographically; projective points by chart
// index, then lexicographically on the free coordinates. Points are returned
// over the extension field when m > 1.
std::vector<Point> enumerate_points(const VarietyDesc& v, int m = 1, Budget budget = {});

bool contains(const VarietyDesc& v, const Point& p);

// Jacobian-criterion smoothness at a rational point: the evaluated Jacobian
// must have rank exactly N - declared_dim (in the affine chart containing the
// point when v is projective). Rank above that contradicts the declared
// dimension and throws.
bool is_smooth_at(const VarietyDesc& v, const Point& p);

// Basis of the kernel of the evaluated equation Jacobian at p.
std::vector<std::vector<Element>> tangent_space(const VarietyDesc& v, const Point& p);

// Dehomogenization of a projective variety at x_i = 1.
VarietyDesc affine_chart(const VarietyDesc& v, int i);

} // namespace covlab
