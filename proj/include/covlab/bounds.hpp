#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "covlab/error.hpp"
#include "covlab/rational.hpp"

namespace covlab {

// Compactly supported Betti numbers b_0..b_{2 dim} of a variety.
struct BettiVector {
    std::vector<std::int64_t> b;

    std::int64_t sigma_c() const;
    void validate(bool nonempty = true) const; // entries >= 0; b_0 >= 1 when nonempty
};

// Least C such that q^d - (sigma_c - 1) q^(d - 1/2) > 0 for every q > C.
// Closed form (sigma_c - 1)^2; 0 when sigma_c == 1.
std::int64_t nonempty_threshold(std::int64_t sigma_c, std::int64_t d);

// Least C such that for all q > C the point-count lower bound of a
// d_Z-dimensional set with Betti sum sigma_Z exceeds the upper bound
// sigma_R * q^(d_R) of a lower-dimensional one:
//   q^(d_Z) - (sigma_Z - 1) q^(d_Z - 1/2) > sigma_R q^(d_R).
// Requires d_Z > d_R >= 0. Exact integer search, no floating point.
std::int64_t crossover_threshold(std::int64_t sigma_z, std::int64_t d_z, std::int64_t sigma_r,
                                 std::int64_t d_r);

// Admissible Betti sum of a degree-n etale Galois cover tamely ramified at
// the boundary: deg_g * sigma.
std::int64_t cover_betti_bound(std::int64_t deg_g, std::int64_t sigma);

// The defining inequality of crossover_threshold at a specific q (exposed so
// tests can check the boundary exactly).
bool crossover_predicate(std::int64_t sigma_z, std::int64_t d_z, std::int64_t sigma_r,
                         std::int64_t d_r, std::int64_t q);

// The nonemptiness inequality q^d - (sigma_c - 1) q^(d - 1/2) > 0 at q.
bool nonempty_predicate(std::int64_t sigma_c, std::int64_t d, std::int64_t q);

// |count - q^d| <= (sigma_c - 1) q^(d - 1/2), compared exactly.
bool weil_window_contains(std::int64_t count, std::int64_t q, std::int64_t d,
                          std::int64_t sigma_c);

// Hodge numbers h^{ij} of a surface, 0 <= i, j <= 2.
struct HodgeDiamond {
    std::array<std::array<std::int64_t, 3>, 3> h{}; // h[i][j]

    std::int64_t at(int i, int j) const { return h[i][j]; }
    void validate() const; // entries >= 0, h(0,0) = h(2,2) = 1
    bool operator==(const HodgeDiamond& o) const { return h == o.h; }
};

// Numerical data of the 5-canonical embedding of a general-type surface:
// chi = alternating sum of h^{0,i}; K^2 from Noether's formula; the ambient
// dimension N = 10 K^2 + chi - 1; and the exact Hilbert polynomial
// (25/2) K^2 T^2 - (5/2) K^2 T + chi.
struct SurfaceEmbeddingData {
    std::int64_t chi = 0;
    std::int64_t k_sq = 0;
    std::int64_t embed_dim = 0;
    Rational hilbert_t2, hilbert_t1, hilbert_t0;

    std::int64_t hilbert_at(std::int64_t t) const;
};

SurfaceEmbeddingData surface_embedding_data(const HodgeDiamond& diamond);

// Every nonnegative diamond with h(0,0) = h(2,2) = 1 and anti-diagonal sums
// h(1,0)+h(0,1) = b1, h(2,0)+h(1,1)+h(0,2) = b2, h(2,1)+h(1,2) = b3, in a
// fixed deterministic order. Count = (b1+1) * C(b2+2,2) * (b3+1).
std::vector<HodgeDiamond> hodge_candidates(std::int64_t b1, std::int64_t b2, std::int64_t b3);

std::int64_t hodge_candidate_count(std::int64_t b1, std::int64_t b2, std::int64_t b3);

} // namespace covlab
