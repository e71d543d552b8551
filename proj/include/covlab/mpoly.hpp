#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covlab/ffield.hpp"
#include "covlab/linalg.hpp"

namespace covlab {

// Graded lexicographic order on exponent vectors: total degree first, then
// lexicographic. Terms print from the map's back, so the highest-degree term
// leads the canonical form.
struct GradedLexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

// Sparse multivariate polynomial over a finite field. Variables x0..x{n-1};
// no stored zero coefficients. Immutable in practice: operations return new
// values.
class Multinomial {
public:
    using TermMap = std::map<std::vector<int>, Element, GradedLexLess>;

    Multinomial(int nvars, FieldSpec spec);
    static Multinomial constant(const Element& c, int nvars, const FieldSpec& spec);
    static Multinomial variable(int j, int nvars, const FieldSpec& spec);

    int nvars() const { return nvars_; }
    const FieldSpec& field() const { return spec_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // nullopt is the degree of the zero polynomial (minus infinity).
    std::optional<int> total_degree() const;
    bool is_constant() const;
    bool is_homogeneous() const;

    void add_term(const std::vector<int>& exps, const Element& coeff);

    Multinomial operator+(const Multinomial& o) const;
    Multinomial operator-(const Multinomial& o) const;
    Multinomial operator*(const Multinomial& o) const;
    Multinomial negated() const;
    Multinomial pow(int e) const;

    Element evaluate(const std::vector<Element>& point) const;
    Multinomial partial(int j) const;

    // Pads every term with a fresh final variable up to total degree d.
    Multinomial homogenize(int d) const;
    // Sets x_chart = 1 and removes the variable, renumbering the later ones.
    Multinomial dehomogenize(int chart) const;
    // Same terms viewed in a larger variable ring (new variables unused).
    Multinomial pad_vars(int new_nvars) const;
    Multinomial base_change(const FieldEmbedding& emb) const;

    // Canonical form: graded-lex descending, coefficients in [0, p).
    std::string to_string() const;

    bool operator==(const Multinomial& o) const {
        return nvars_ == o.nvars_ && spec_ == o.spec_ && terms_ == o.terms_;
    }

private:
    int nvars_;
    FieldSpec spec_;
    TermMap terms_;
};

// Expression grammar: integer literals, element literals "[c0,c1,...]",
// variables x0..x{nvars-1}, operators + - * ^, parentheses; whitespace
// insignificant.
Multinomial parse_poly(const std::string& text, int nvars, const FieldSpec& spec);

Multinomial formal_partial(const Multinomial& f, int j);

// Matrix of formal partials d f_i / d x_j.
struct JacobianMatrix {
    int rows = 0; // number of polynomials
    int cols = 0; // number of variables
    std::vector<std::vector<Multinomial>> entries;

    MatrixF evaluate_at(const std::vector<Element>& point, const FieldSpec& spec) const;
};

JacobianMatrix jacobian(const std::vector<Multinomial>& fs);

} // namespace covlab
