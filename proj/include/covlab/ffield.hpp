#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "covlab/budget.hpp"
#include "covlab/error.hpp"

namespace covlab {

enum class ArithOp { Add, Sub, Mul, Div };

// Element of F_{p^k}: exactly k coefficients in [0, p), coordinates in the
// power basis of the modulus root. Plain data; arithmetic lives on FieldSpec.
// `tag` packs (p, k) of the owning field and is checked by every operation.
struct Element {
    std::vector<std::int64_t> coeffs;
    std::uint64_t tag = 0;

    bool operator==(const Element& o) const { return coeffs == o.coeffs; }
    bool operator!=(const Element& o) const { return coeffs != o.coeffs; }
    bool operator<(const Element& o) const { return coeffs < o.coeffs; }
};

// Description of F_{p^k}. Immutable after construction; cheap to copy.
// For k >= 2 the modulus is a monic irreducible of degree k over F_p,
// stored as k+1 coefficients [c0, ..., c_{k-1}, 1]. Empty when k == 1.
class FieldSpec {
public:
    FieldSpec() = default;

    std::int64_t p() const;
    int k() const;
    std::int64_t q() const; // p^k
    const std::vector<std::int64_t>& modulus() const;
    std::uint64_t tag() const;
    bool valid() const { return d_ != nullptr; }

    Element zero() const;
    Element one() const;
    Element from_int(std::int64_t n) const; // n mod p as a constant
    Element make_element(std::vector<std::int64_t> coeffs) const; // reduces mod p
    Element generator() const;              // the modulus root; requires k >= 2

    bool is_zero(const Element& a) const;
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;
    Element div(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element inv(const Element& a) const;
    Element pow(const Element& a, std::uint64_t e) const;
    Element frobenius(const Element& a) const; // a^p

    // All p^k elements, ascending in coefficient-vector lexicographic order
    // (constant coefficient most significant), beginning with 0.
    std::vector<Element> enumerate(Budget budget = {}) const;

    std::string to_string() const;                       // "GF(p)" or "GF(p^k)"
    std::string element_to_string(const Element&) const; // "[c0,c1,...]"

    bool operator==(const FieldSpec& o) const;
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

private:
    struct Data;
    explicit FieldSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;

    friend FieldSpec make_field(std::int64_t, int, Budget);
    friend FieldSpec make_field_with_modulus(std::int64_t, int, const std::vector<std::int64_t>&);
    void check(const Element& a) const;
};

// F_{p^k} with the deterministically chosen modulus: the lexicographically
// first (constant coefficient compared first) monic irreducible of degree k.
FieldSpec make_field(std::int64_t p, int k, Budget budget = {});

// F_{p^k} with an explicit monic irreducible modulus [c0, ..., c_{k-1}, 1].
FieldSpec make_field_with_modulus(std::int64_t p, int k, const std::vector<std::int64_t>& modulus);

Element arith(const FieldSpec& spec, const Element& a, const Element& b, ArithOp op);
Element frobenius(const Element& a, const FieldSpec& spec);

// Subfield embedding F_{p^k} -> F_{p^{km}} sending the degree-k generator to
// a fixed root of the old modulus (the first root in enumeration order).
class FieldEmbedding {
public:
    FieldEmbedding() = default;
    FieldEmbedding(FieldSpec from, FieldSpec to, Element generator_image);

    const FieldSpec& from() const { return from_; }
    const FieldSpec& to() const { return to_; }
    const Element& generator_image() const { return gen_image_; }

    Element map(const Element& a) const;

private:
    FieldSpec from_, to_;
    Element gen_image_;
    std::vector<Element> gen_powers_; // generator_image^0 .. ^(k-1)
};

struct FieldExtension {
    FieldSpec field;
    FieldEmbedding embedding;
};

// F_{p^{km}} together with the embedding of `spec`. m == 1 returns `spec`
// itself with the identity embedding.
FieldExtension extend_field(const FieldSpec& spec, int m, Budget budget = {});

bool is_prime(std::int64_t n);

// "GF(p)" or "GF(p^k)".
FieldSpec parse_gf_literal(const std::string& text, Budget budget = {});

} // namespace covlab
