#include <doctest.h>

#include <bitset>
#include <random>

#include "covlab/mpoly.hpp"

using namespace covlab;

namespace {

// Deterministic sparse polynomial sampler for property tests.
Multinomial random_poly(std::mt19937_64& rng, int nvars, int max_deg, int terms,
                        const FieldSpec& spec) {
    Multinomial f(nvars, spec);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(nvars);
        for (int j = 0; j < nvars; ++j) e[j] = static_cast<int>(rng() % (max_deg + 1));
        f.add_term(e, spec.from_int(static_cast<std::int64_t>(rng() % spec.p())));
    }
    return f;
}

std::vector<Element> random_point(std::mt19937_64& rng, int nvars, const FieldSpec& spec) {
    std::vector<Element> pt;
    pt.reserve(nvars);
    for (int j = 0; j < nvars; ++j)
        pt.push_back(spec.from_int(static_cast<std::int64_t>(rng() % spec.p())));
    return pt;
}

// Independent rank oracle over F_2 on bitset rows.
int bitset_rank_f2(std::vector<std::bitset<16>> rows, int ncols) {
    int rank = 0;
    for (int col = 0; col < ncols; ++col) {
        int pivot = -1;
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][col]) {
                pivot = static_cast<int>(r);
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (static_cast<int>(r) != rank && rows[r][col]) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("parse produces canonical sparse form") {
    FieldSpec f7 = make_field(7, 1);
    Multinomial f = parse_poly("x0^3 - x1", 2, f7);
    REQUIRE(f.terms().size() == 2);
    CHECK(f.terms().at({3, 0}) == f7.one());
    CHECK(f.terms().at({0, 1}) == f7.from_int(6));

    Multinomial zero = parse_poly("0", 2, f7);
    CHECK(zero.is_zero());
    CHECK(!zero.total_degree().has_value()); // minus-infinity sentinel

    Multinomial g = parse_poly("x0*x0 + 7", 2, f7);
    REQUIRE(g.terms().size() == 1);
    CHECK(g.terms().at({2, 0}) == f7.one());

    CHECK_THROWS_AS(parse_poly("x2 + 1", 2, f7), ParseError); // unknown variable
    CHECK_THROWS_AS(parse_poly("x0 + * 3", 2, f7), ParseError);
    CHECK_THROWS_AS(parse_poly("(x0 + 1", 2, f7), ParseError);
}

TEST_CASE("parse handles precedence, unary minus, element literals") {
    FieldSpec f5 = make_field(5, 1);
    CHECK(parse_poly("-x0^2", 1, f5) == parse_poly("4*x0^2", 1, f5));
    CHECK(parse_poly("(x0+1)^2", 1, f5) == parse_poly("x0^2 + 2*x0 + 1", 1, f5));
    CHECK(parse_poly("2*x0 - 3*x0", 1, f5) == parse_poly("4*x0", 1, f5));

    FieldSpec f9 = make_field(3, 2);
    Multinomial h = parse_poly("[0,1]*x0 + [2,0]", 1, f9);
    CHECK(h.terms().at({1}) == f9.generator());
    CHECK(h.terms().at({0}) == f9.from_int(2));
}

TEST_CASE("parse-print-parse is idempotent") {
    std::mt19937_64 rng(42);
    FieldSpec f7 = make_field(7, 1);
    FieldSpec f9 = make_field(3, 2);
    for (int i = 0; i < 50; ++i) {
        Multinomial f = random_poly(rng, 3, 4, 5, f7);
        CHECK(parse_poly(f.to_string(), 3, f7) == f);
        Multinomial g = random_poly(rng, 2, 3, 4, f9);
        CHECK(parse_poly(g.to_string(), 2, f9) == g);
    }
    CHECK(Multinomial(2, f7).to_string() == "0");
}

TEST_CASE("evaluate") {
    FieldSpec f7 = make_field(7, 1);
    Multinomial f = parse_poly("x0^3 - x1", 2, f7);
    CHECK(f.evaluate({f7.from_int(2), f7.one()}) == f7.zero()); // 8 = 1 mod 7
    CHECK(Multinomial(2, f7).evaluate({f7.one(), f7.one()}) == f7.zero());
    CHECK_THROWS_AS(f.evaluate({f7.one()}), ValidationError);
}

TEST_CASE("evaluate is a ring homomorphism in the polynomial") {
    std::mt19937_64 rng(7);
    FieldSpec f7 = make_field(7, 1);
    for (int i = 0; i < 40; ++i) {
        Multinomial f = random_poly(rng, 2, 3, 4, f7);
        Multinomial g = random_poly(rng, 2, 3, 4, f7);
        auto pt = random_point(rng, 2, f7);
        CHECK((f * g).evaluate(pt) == f7.mul(f.evaluate(pt), g.evaluate(pt)));
        CHECK((f + g).evaluate(pt) == f7.add(f.evaluate(pt), g.evaluate(pt)));
    }
}

TEST_CASE("formal partials") {
    FieldSpec f7 = make_field(7, 1);
    CHECK(formal_partial(parse_poly("x0^3", 1, f7), 0) == parse_poly("3*x0^2", 1, f7));
    // p divides the exponent: derivative vanishes
    CHECK(formal_partial(parse_poly("x0^7", 1, f7), 0).is_zero());
    CHECK_THROWS_AS(formal_partial(parse_poly("x0", 1, f7), 1), ValidationError);
}

TEST_CASE("partial satisfies linearity and Leibniz") {
    std::mt19937_64 rng(11);
    FieldSpec f5 = make_field(5, 1);
    for (int i = 0; i < 40; ++i) {
        Multinomial f = random_poly(rng, 2, 4, 4, f5);
        Multinomial g = random_poly(rng, 2, 4, 4, f5);
        for (int j = 0; j < 2; ++j) {
            CHECK((f + g).partial(j) == f.partial(j) + g.partial(j));
            CHECK((f * g).partial(j) == f * g.partial(j) + g * f.partial(j));
        }
    }
}

TEST_CASE("jacobian shapes and values") {
    FieldSpec f7 = make_field(7, 1);
    JacobianMatrix jm = jacobian({parse_poly("x0^2 + x1^2 - 1", 2, f7)});
    REQUIRE(jm.rows == 1);
    REQUIRE(jm.cols == 2);
    CHECK(jm.entries[0][0] == parse_poly("2*x0", 2, f7));
    CHECK(jm.entries[0][1] == parse_poly("2*x1", 2, f7));

    JacobianMatrix id = jacobian({parse_poly("x0", 2, f7), parse_poly("x1", 2, f7)});
    CHECK(id.entries[0][0] == parse_poly("1", 2, f7));
    CHECK(id.entries[0][1].is_zero());
    CHECK(id.entries[1][1] == parse_poly("1", 2, f7));

    // d(x0^ell) = ell x0^(ell-1) vanishes only at x0 = 0 when p does not divide ell
    JacobianMatrix cube = jacobian({parse_poly("x0^3", 1, f7)});
    for (const auto& a : f7.enumerate()) {
        bool vanishes = f7.is_zero(cube.entries[0][0].evaluate({a}));
        CHECK(vanishes == f7.is_zero(a));
    }

    FieldSpec f5 = make_field(5, 1);
    CHECK_THROWS_AS(jacobian({parse_poly("x0", 1, f7), parse_poly("x0", 1, f5)}), ValidationError);
}

TEST_CASE("jacobian rank at a point matches an independent elimination at p = 2") {
    std::mt19937_64 rng(13);
    FieldSpec f2 = make_field(2, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Multinomial> polys;
        const int m = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < m; ++i) polys.push_back(random_poly(rng, 3, 3, 4, f2));
        auto pt = random_point(rng, 3, f2);
        MatrixF evaluated = jacobian(polys).evaluate_at(pt, f2);
        std::vector<std::bitset<16>> rows;
        for (const auto& row : evaluated.rows) {
            std::bitset<16> bits;
            for (std::size_t j = 0; j < row.size(); ++j) bits[j] = row[j].coeffs[0] == 1;
            rows.push_back(bits);
        }
        CHECK(rank(evaluated) == bitset_rank_f2(rows, 3));
    }
}

TEST_CASE("homogenize and dehomogenize") {
    FieldSpec f7 = make_field(7, 1);
    Multinomial f = parse_poly("x0^2 + 1", 2, f7);
    Multinomial h = f.homogenize(2);
    CHECK(h.nvars() == 3);
    CHECK(h == parse_poly("x0^2 + x2^2", 3, f7));
    CHECK(h.is_homogeneous());

    // round trip through the appended chart variable
    Multinomial g = parse_poly("x0^3 + x1 + 2", 2, f7);
    CHECK(g.homogenize(3).dehomogenize(2) == g);

    CHECK(parse_poly("x0*x1", 2, f7).homogenize(3) == parse_poly("x0*x1*x2", 3, f7));
    CHECK_THROWS_AS(g.homogenize(2), ValidationError); // below total degree

    // evaluation on the chart is preserved
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        Multinomial r = random_poly(rng, 2, 3, 4, f7);
        auto d = r.total_degree();
        if (!d.has_value()) continue;
        auto pt = random_point(rng, 2, f7);
        auto lifted = pt;
        lifted.push_back(f7.one());
        CHECK(r.homogenize(*d + 1).evaluate(lifted) == r.evaluate(pt));
    }
}
