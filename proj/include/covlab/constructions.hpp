#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covlab/covers.hpp"

namespace covlab {

struct CoverConstruction {
    CoverDesc cover;
    std::vector<std::string> warnings;
};

// Degree-ell root cover of an affine base: one new variable x_N, one new
// equation x_N^ell = u, map = projection onto the base coordinates. Errors
// when ell is not prime, equals the characteristic, or u is constant. A
// gcd(ell, q - 1) != 1 base field only demotes the exceptionality claim to a
// warning; the cover itself is still valid.
CoverConstruction kummer_cover(const VarietyDesc& base, const Multinomial& u, std::int64_t ell,
                               CoverOptions opts = {});

// Projection Y x V -> Y. Affine factors concatenate coordinates; projective
// factors are handled in Segre coordinates z_ij = x_i y_j with rank-one
// minors plus the pulled-back equations of both factors. Requires
// |V(F)| >= 2. The projection is declared with unbounded fiber size: it is
// finite only when V is zero-dimensional.
CoverConstruction product_cover(const VarietyDesc& y, const VarietyDesc& v,
                                CoverOptions opts = {});

enum class SectionMode { Fill, Avoid };

struct SectionSearchResult {
    std::optional<VarietyDesc> section; // base equations plus the found form
    std::optional<Multinomial> form;
    std::int64_t trials_run = 0;
    std::optional<std::int64_t> found_at_trial;
    std::uint64_t seed = 0;
    SectionMode mode = SectionMode::Fill;
    int dmax = 1;
};

// Seeded randomized search for a hypersurface section H of degree <= dmax:
// Fill keeps every rational point of X on H (H is sampled from the linear
// system of forms vanishing on X(F)); Avoid keeps every rational point off H.
// Sections singular at a tested point are rejected. Not-found after `trials`
// attempts is a valid outcome.
SectionSearchResult search_section(const VarietyDesc& x, int dmax, SectionMode mode,
                                   std::int64_t trials, std::uint64_t seed, Budget budget = {});

} // namespace covlab
