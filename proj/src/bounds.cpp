#include "covlab/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace covlab {

using boost::multiprecision::cpp_int;

namespace {

cpp_int ipow(std::int64_t base, std::int64_t exp) {
    cpp_int r = 1;
    cpp_int b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// a > b * sqrt(q) with a possibly negative, b >= 0, q >= 1: compare exactly
// by squaring once the sign is settled.
bool exceeds_sqrt_multiple(const cpp_int& a, const cpp_int& b, std::int64_t q) {
    if (a <= 0) return false;
    return a * a > b * b * q;
}

} // namespace

std::int64_t BettiVector::sigma_c() const {
    std::int64_t s = 0;
    for (auto x : b) s += x;
    return s;
}

void BettiVector::validate(bool nonempty) const {
    if (b.empty()) throw ValidationError("empty Betti vector");
    for (auto x : b)
        if (x < 0) throw ValidationError("negative Betti number");
    if (nonempty && b.front() < 1)
        throw ValidationError("a nonempty variety has b_0 >= 1");
}

bool nonempty_predicate(std::int64_t sigma_c, std::int64_t d, std::int64_t q) {
    // q^d - (sigma_c - 1) q^(d - 1/2) > 0, square root cleared by squaring
    if (d == 0) return cpp_int(q) > cpp_int(sigma_c - 1) * (sigma_c - 1);
    cpp_int a = ipow(q, d);
    cpp_int b = cpp_int(sigma_c - 1) * ipow(q, d - 1);
    return exceeds_sqrt_multiple(a, b, q);
}

std::int64_t nonempty_threshold(std::int64_t sigma_c, std::int64_t d) {
    if (sigma_c < 1) throw ValidationError("Betti sum must be at least 1");
    if (d < 0) throw ValidationError("negative dimension");
    if (sigma_c > (std::int64_t{1} << 31))
        throw ValidationError("Betti sum too large for an exact threshold");
    return (sigma_c - 1) * (sigma_c - 1);
}

bool crossover_predicate(std::int64_t sigma_z, std::int64_t d_z, std::int64_t sigma_r,
                         std::int64_t d_r, std::int64_t q) {
    // q^(d_Z) - sigma_R q^(d_R) > (sigma_Z - 1) q^(d_Z - 1) sqrt(q)
    cpp_int a = ipow(q, d_z) - cpp_int(sigma_r) * ipow(q, d_r);
    cpp_int b = cpp_int(sigma_z - 1) * ipow(q, d_z - 1);
    return exceeds_sqrt_multiple(a, b, q);
}

std::int64_t crossover_threshold(std::int64_t sigma_z, std::int64_t d_z, std::int64_t sigma_r,
                                 std::int64_t d_r) {
    if (sigma_z < 1) throw ValidationError("Betti sum of the larger set must be at least 1");
    if (sigma_r < 0) throw ValidationError("negative Betti sum");
    if (d_r < 0 || d_z <= d_r)
        throw ValidationError("crossover requires dim Z > dim R >= 0");

    if (crossover_predicate(sigma_z, d_z, sigma_r, d_r, 1)) return 0;
    // the predicate has a single sign change in q, so double then bisect
    std::int64_t lo = 1, hi = 2;
    while (!crossover_predicate(sigma_z, d_z, sigma_r, d_r, hi)) {
        lo = hi;
        if (hi > (std::int64_t{1} << 60))
            throw ValidationError("crossover threshold exceeds the supported range");
        hi *= 2;
    }
    // lo fails, hi holds
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (crossover_predicate(sigma_z, d_z, sigma_r, d_r, mid))
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

std::int64_t cover_betti_bound(std::int64_t deg_g, std::int64_t sigma) {
    if (deg_g < 1) throw ValidationError("cover degree must be at least 1");
    if (sigma < 1) throw ValidationError("Betti constant must be at least 1");
    std::int64_t r = 0;
    if (__builtin_mul_overflow(deg_g, sigma, &r))
        throw ValidationError("Betti bound overflows");
    return r;
}

bool weil_window_contains(std::int64_t count, std::int64_t q, std::int64_t d,
                          std::int64_t sigma_c) {
    if (q < 2 || d < 0 || sigma_c < 1 || count < 0)
        throw ValidationError("bad Weil window arguments");
    // |count - q^d|^2 <= (sigma_c - 1)^2 q^(2d - 1)
    cpp_int dev = cpp_int(count) - ipow(q, d);
    cpp_int s2 = cpp_int(sigma_c - 1) * (sigma_c - 1);
    if (d == 0) return dev * dev * q <= s2;
    return dev * dev <= s2 * ipow(q, 2 * d - 1);
}

void HodgeDiamond::validate() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (h[i][j] < 0) throw ValidationError("negative Hodge number");
    if (h[0][0] != 1 || h[2][2] != 1)
        throw ValidationError("surface diamond needs h(0,0) = h(2,2) = 1");
}

std::int64_t SurfaceEmbeddingData::hilbert_at(std::int64_t t) const {
    Rational value = hilbert_t2 * Rational(t) * Rational(t) + hilbert_t1 * Rational(t) + hilbert_t0;
    if (!value.is_integer())
        throw ValidationError("Hilbert polynomial is not integral at T = " + std::to_string(t));
    return value.num;
}

SurfaceEmbeddingData surface_embedding_data(const HodgeDiamond& diamond) {
    diamond.validate();
    SurfaceEmbeddingData out;
    out.chi = diamond.at(0, 0) - diamond.at(0, 1) + diamond.at(0, 2);
    std::int64_t topological = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            topological += ((i + j) % 2 == 0 ? 1 : -1) * diamond.at(i, j);
    out.k_sq = 12 * out.chi - topological;
    if (out.k_sq <= 0)
        throw ValidationError("K^2 = " + std::to_string(out.k_sq) +
                              " is not positive; the 5-canonical embedding needs K^2 > 0");
    out.embed_dim = 10 * out.k_sq + out.chi - 1;
    out.hilbert_t2 = Rational(25 * out.k_sq, 2);
    out.hilbert_t1 = Rational(-5 * out.k_sq, 2);
    out.hilbert_t0 = Rational(out.chi);
    for (std::int64_t t = -10; t <= 10; ++t) out.hilbert_at(t); // integrality contract
    return out;
}

std::vector<HodgeDiamond> hodge_candidates(std::int64_t b1, std::int64_t b2, std::int64_t b3) {
    if (b1 < 0 || b2 < 0 || b3 < 0) throw ValidationError("negative Betti number");
    std::vector<HodgeDiamond> out;
    for (std::int64_t h10 = 0; h10 <= b1; ++h10) {
        for (std::int64_t h20 = 0; h20 <= b2; ++h20) {
            for (std::int64_t h11 = 0; h11 + h20 <= b2; ++h11) {
                for (std::int64_t h21 = 0; h21 <= b3; ++h21) {
                    HodgeDiamond d;
                    d.h[0][0] = 1;
                    d.h[2][2] = 1;
                    d.h[1][0] = h10;
                    d.h[0][1] = b1 - h10;
                    d.h[2][0] = h20;
                    d.h[1][1] = h11;
                    d.h[0][2] = b2 - h20 - h11;
                    d.h[2][1] = h21;
                    d.h[1][2] = b3 - h21;
                    out.push_back(d);
                }
            }
        }
    }
    return out;
}

std::int64_t hodge_candidate_count(std::int64_t b1, std::int64_t b2, std::int64_t b3) {
    if (b1 < 0 || b2 < 0 || b3 < 0) throw ValidationError("negative Betti number");
    return (b1 + 1) * ((b2 + 2) * (b2 + 1) / 2) * (b3 + 1);
}

} // namespace covlab
