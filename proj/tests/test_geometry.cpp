#include <doctest.h>

#include <set>

#include "covlab/bounds.hpp"
#include "covlab/geometry.hpp"

using namespace covlab;

namespace {

VarietyDesc affine_line(const FieldSpec& f) {
    return make_variety(Ambient{AmbientKind::Affine, 1}, {}, 1, f);
}

VarietyDesc circle(const FieldSpec& f) {
    return make_variety(Ambient{AmbientKind::Affine, 2},
                        {parse_poly("x0^2 + x1^2 - 1", 2, f)}, 1, f);
}

Point affine_point(const FieldSpec& f, std::vector<std::int64_t> ints) {
    std::vector<Element> coords;
    for (auto v : ints) coords.push_back(f.from_int(v));
    return Point{false, std::move(coords)};
}

} // namespace

TEST_CASE("circle over GF(5) has exactly the four axis points") {
    FieldSpec f5 = make_field(5, 1);
    auto pts = enumerate_points(circle(f5));
    std::set<Point> got(pts.begin(), pts.end());
    std::set<Point> want{affine_point(f5, {0, 1}), affine_point(f5, {0, 4}),
                         affine_point(f5, {1, 0}), affine_point(f5, {4, 0})};
    CHECK(got == want);
    // deterministic ascending order
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
}

TEST_CASE("ambient space point counts") {
    FieldSpec f7 = make_field(7, 1);
    CHECK(enumerate_points(affine_line(f7)).size() == 7);

    FieldSpec f2 = make_field(2, 1);
    VarietyDesc p2 = make_variety(Ambient{AmbientKind::Projective, 2}, {}, 2, f2);
    CHECK(enumerate_points(p2).size() == 7); // (q^3 - 1)/(q - 1)

    for (std::int64_t p : {2, 3, 5}) {
        FieldSpec f = make_field(p, 1);
        for (int n = 1; n <= 3; ++n) {
            VarietyDesc an = make_variety(Ambient{AmbientKind::Affine, n}, {}, n, f);
            std::int64_t expect_a = 1;
            for (int i = 0; i < n; ++i) expect_a *= p;
            CHECK(static_cast<std::int64_t>(enumerate_points(an).size()) == expect_a);
            VarietyDesc pn = make_variety(Ambient{AmbientKind::Projective, n}, {}, n, f);
            std::int64_t expect_p = 0, power = 1;
            for (int i = 0; i <= n; ++i) {
                expect_p += power;
                power *= p;
            }
            CHECK(static_cast<std::int64_t>(enumerate_points(pn).size()) == expect_p);
        }
    }
}

TEST_CASE("contains") {
    FieldSpec f5 = make_field(5, 1);
    VarietyDesc c = circle(f5);
    CHECK(contains(c, affine_point(f5, {1, 0})));
    CHECK(!contains(c, affine_point(f5, {1, 1})));
    for (const auto& p : enumerate_points(c)) CHECK(contains(c, p));
    CHECK_THROWS_AS(contains(c, affine_point(f5, {1})), ValidationError);
}

TEST_CASE("smoothness by the Jacobian criterion") {
    FieldSpec f5 = make_field(5, 1);
    VarietyDesc c = circle(f5);
    CHECK(is_smooth_at(c, affine_point(f5, {1, 0})));
    for (const auto& p : enumerate_points(c)) CHECK(is_smooth_at(c, p));

    VarietyDesc node = make_variety(Ambient{AmbientKind::Affine, 2},
                                    {parse_poly("x0*x1", 2, f5)}, 1, f5);
    CHECK(!is_smooth_at(node, affine_point(f5, {0, 0})));
    CHECK(is_smooth_at(node, affine_point(f5, {2, 0})));

    // declared dimension too low for the observed rank: contradiction
    VarietyDesc bad = make_variety(Ambient{AmbientKind::Affine, 2},
                                   {parse_poly("x0^2 + x1^2 - 1", 2, f5)}, 2, f5);
    CHECK_THROWS_AS(is_smooth_at(bad, affine_point(f5, {1, 0})), ValidationError);

    CHECK_THROWS_AS(is_smooth_at(c, affine_point(f5, {1, 1})), ValidationError); // off the variety
}

TEST_CASE("hypersurface x2^ell - u is smooth where the exponent is invertible") {
    FieldSpec f5 = make_field(5, 1);
    VarietyDesc v = make_variety(Ambient{AmbientKind::Affine, 3},
                                 {parse_poly("x2^3 - x0", 3, f5)}, 2, f5);
    for (const auto& p : enumerate_points(v)) CHECK(is_smooth_at(v, p));
}

TEST_CASE("tangent spaces") {
    FieldSpec f5 = make_field(5, 1);
    auto basis = tangent_space(circle(f5), affine_point(f5, {1, 0}));
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Element>{f5.zero(), f5.one()});

    VarietyDesc plane = make_variety(Ambient{AmbientKind::Affine, 2}, {}, 2, f5);
    CHECK(tangent_space(plane, affine_point(f5, {3, 4})).size() == 2);

    VarietyDesc node = make_variety(Ambient{AmbientKind::Affine, 2},
                                    {parse_poly("x0*x1", 2, f5)}, 1, f5);
    CHECK(tangent_space(node, affine_point(f5, {0, 0})).size() == 2); // singular point
}

TEST_CASE("affine charts of projective varieties") {
    FieldSpec f5 = make_field(5, 1);
    VarietyDesc conic = make_variety(Ambient{AmbientKind::Projective, 2},
                                     {parse_poly("x0^2 + x1^2 - x2^2", 3, f5)}, 1, f5,
                                     TypeDescriptor{2, 1, 2});
    VarietyDesc chart2 = affine_chart(conic, 2);
    CHECK(chart2.ambient.kind == AmbientKind::Affine);
    CHECK(chart2.ambient.n == 2);
    CHECK(chart2.equations[0] == parse_poly("x0^2 + x1^2 - 1", 2, f5));
    REQUIRE(chart2.type.has_value());
    CHECK(*chart2.type == TypeDescriptor{2, 1, 2}); // descriptor carried over

    // chart points, re-homogenized, cover the projective points exactly
    std::set<Point> all;
    for (int i = 0; i <= 2; ++i) {
        for (const auto& p : enumerate_points(affine_chart(conic, i))) {
            std::vector<Element> coords = p.coords;
            coords.insert(coords.begin() + i, f5.one());
            all.insert(normalize_projective(coords, f5));
        }
    }
    auto proj_pts = enumerate_points(conic);
    CHECK(all == std::set<Point>(proj_pts.begin(), proj_pts.end()));
}

TEST_CASE("projective normalization is idempotent and scale invariant") {
    FieldSpec f7 = make_field(7, 1);
    std::vector<Element> v{f7.zero(), f7.from_int(3), f7.from_int(5)};
    Point n1 = normalize_projective(v, f7);
    CHECK(n1.coords[1] == f7.one());
    for (std::int64_t lambda = 1; lambda < 7; ++lambda) {
        std::vector<Element> scaled;
        for (const auto& c : v) scaled.push_back(f7.mul(c, f7.from_int(lambda)));
        CHECK(normalize_projective(scaled, f7) == n1);
    }
    CHECK(normalize_projective(n1.coords, f7) == n1);
    CHECK_THROWS_AS(normalize_projective({f7.zero(), f7.zero()}, f7), ValidationError);
}

TEST_CASE("extension points restrict to the Frobenius-fixed subset") {
    FieldSpec f5 = make_field(5, 1);
    VarietyDesc c = circle(f5);
    FieldExtension ext = extend_field(f5, 2);
    auto base_pts = enumerate_points(c, 1);
    auto ext_pts = enumerate_points(c, 2);
    CHECK(ext_pts.size() == 24); // twisted torus: q - 1 points when -1 is a square

    std::set<Point> embedded;
    for (const auto& p : base_pts) {
        std::vector<Element> coords;
        for (const auto& e : p.coords) coords.push_back(ext.embedding.map(e));
        embedded.insert(Point{false, std::move(coords)});
    }
    std::set<Point> fixed;
    for (const auto& p : ext_pts) {
        bool is_fixed = true;
        for (const auto& e : p.coords)
            is_fixed = is_fixed && ext.field.pow(e, 5) == e;
        if (is_fixed) fixed.insert(p);
    }
    CHECK(embedded == fixed);
}

TEST_CASE("extension enumeration over a non-prime base field") {
    FieldSpec f4 = make_field(2, 2);
    VarietyDesc line = make_variety(Ambient{AmbientKind::Affine, 1}, {}, 1, f4);
    CHECK(enumerate_points(line, 1).size() == 4);
    CHECK(enumerate_points(line, 2).size() == 16); // GF(16) points

    // the embedded generator keeps satisfying its minimal polynomial, so a
    // curve with GF(4)-coefficients base-changes consistently
    Multinomial eq = parse_poly("x0^2 + [0,1]*x1", 2, f4); // x0^2 = g x1
    VarietyDesc v = make_variety(Ambient{AmbientKind::Affine, 2}, {eq}, 1, f4);
    CHECK(enumerate_points(v, 1).size() == 4);  // graph of x1 = x0^2 / g
    CHECK(enumerate_points(v, 2).size() == 16);
}

TEST_CASE("smooth point counts respect the Weil window") {
    // the circle is a twist of the multiplicative group: sigma_c = 2
    for (std::int64_t p : {5, 13, 17}) {
        FieldSpec f = make_field(p, 1);
        auto pts = enumerate_points(circle(f));
        CHECK(weil_window_contains(static_cast<std::int64_t>(pts.size()), p, 1, 2));
    }
}

TEST_CASE("degenerate varieties with no rational points are valid") {
    FieldSpec f3 = make_field(3, 1);
    VarietyDesc v = make_variety(Ambient{AmbientKind::Affine, 1},
                                 {parse_poly("x0^2 + 1", 1, f3)}, 0, f3);
    CHECK(enumerate_points(v, 1).empty());
    CHECK(enumerate_points(v, 2).size() == 2); // roots of -1 appear over GF(9)
}

TEST_CASE("validation and budget errors") {
    FieldSpec f5 = make_field(5, 1);
    CHECK_THROWS_AS(make_variety(Ambient{AmbientKind::Projective, 2},
                                 {parse_poly("x0^2 + x1", 3, f5)}, 1, f5),
                    ValidationError); // inhomogeneous
    CHECK_THROWS_AS(make_variety(Ambient{AmbientKind::Affine, 2},
                                 {parse_poly("x0", 1, f5)}, 1, f5),
                    ValidationError); // wrong variable count
    CHECK_THROWS_AS(make_variety(Ambient{AmbientKind::Affine, 2},
                                 {parse_poly("x0", 2, f5), parse_poly("x1", 2, f5)}, 1, f5,
                                 TypeDescriptor{2, 1, 1}),
                    ValidationError); // more equations than the descriptor allows
    CHECK_THROWS_AS(enumerate_points(circle(f5), 1, Budget{20}), BudgetError);
}
