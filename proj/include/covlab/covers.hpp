#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "covlab/geometry.hpp"

namespace covlab {

// Raised when the differential drops rank at every enumerated source point,
// the point-level signature of an inseparable (not generically etale) map.
class NotGenericallyEtaleError : public ValidationError {
public:
    explicit NotGenericallyEtaleError(int m)
        : ValidationError("map drops rank at every rational source point over extension degree " +
                          std::to_string(m) + "; cover is not generically etale"),
          m_(m) {}
    int extension_degree() const { return m_; }

private:
    int m_;
};

// Raised when ramification analysis meets a source point where the tangent
// space dimension disagrees with the declared dimension.
class SingularSourcePointError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Finite morphism between two varieties over the same field, given by one
// polynomial tuple (affine source) or one tuple per chart (projective
// source; tuples written in the full homogeneous coordinates and evaluated
// on representatives scaled to 1 at the chart index). `degree` is the
// declared degree; nullopt declares the fiber size unbounded (the projection
// from a positive-dimensional product is the one packaged producer).
struct CoverDesc {
    VarietyDesc source;
    VarietyDesc target;
    std::vector<std::vector<Multinomial>> chart_maps;
    std::optional<std::int64_t> degree;
    int verified_depth = 0; // extension depth to which map-into-target held at load
};

struct CoverOptions {
    int verify_depth = 2;
    Budget budget;
};

// Validates shape and field consistency, checks that the map lands on the
// target at every rational point up to opts.verify_depth (skipping depths the
// budget cannot afford), checks chart agreement on overlaps for projective
// sources, and checks declared fiber bounds at the verified depths.
CoverDesc make_cover(VarietyDesc source, VarietyDesc target,
                     std::vector<std::vector<Multinomial>> chart_maps,
                     std::optional<std::int64_t> degree, CoverOptions opts = {});

// Image of a base-field rational point; checked to land on the target.
Point apply(const CoverDesc& f, const Point& p);

// { f(P) : P in X(F_{q^m}) }.
std::set<Point> image_set(const CoverDesc& f, int m, Budget budget = {});

// Source points over F_{q^m} mapping to q (a point over the degree-m
// extension field when m > 1).
std::vector<Point> fiber(const CoverDesc& f, const Point& q, int m, Budget budget = {});

bool injective_on(const CoverDesc& f, int m, Budget budget = {});
bool surjective_on(const CoverDesc& f, int m, Budget budget = {});

// Points where the differential restricted to the tangent space drops below
// the source dimension. Throws NotGenericallyEtaleError when that happens at
// every rational point, and SingularSourcePointError on a singular point.
std::vector<Point> ramification_points(const CoverDesc& f, int m, Budget budget = {});

// Images of the ramification points, deduplicated.
std::vector<Point> branch_points(const CoverDesc& f, int m, Budget budget = {});

enum class PairKind { Diagonal, OffDiagonalRamified, OffDiagonalUnramified };

struct PairClass {
    Point first, second;
    PairKind kind;
};

// All ordered pairs (P1, P2) of source points over F_{q^m} with
// f(P1) = f(P2), classified. Grouped by image point to keep the cost at
// sum of squared fiber sizes.
std::vector<PairClass> fiber_product_pairs(const CoverDesc& f, int m, Budget budget = {});

struct StarRow {
    int m = 0;
    std::int64_t x_count = 0;
    std::int64_t y_count = 0;
    bool injective = false;
    bool surjective = false;
    std::int64_t max_fiber = 0;
    std::int64_t ramified_count = 0;
    std::int64_t offdiag_pairs = 0;
    bool all_points_ramified = false;
};

enum class VerdictKind { ConsistentWithExceptional, RefutedAt, Indeterminate };

struct StarReport {
    std::vector<StarRow> rows;
    VerdictKind verdict = VerdictKind::Indeterminate;
    int refuted_at = 0; // least m with a non-bijective row, when verdict == RefutedAt
    int max_ext = 0;
    bool truncated = false;
    std::string truncation_note;
    // every computed row had all rational points ramified: evidence that the
    // map is inseparable and outside the analyzer's hypotheses
    bool inseparability_suspected = false;
};

std::string verdict_to_string(const StarReport& r);

// Per-extension injectivity/surjectivity/ramification evidence for m <= M.
// Budget exhaustion truncates the report instead of failing it.
StarReport star_report(const CoverDesc& f, int max_ext, Budget budget = {});

enum class KummerVerdict { Exceptional, NotExceptional };

// Exact verdict for the degree-ell root cover over a field of size q:
// exceptional over F_q iff gcd(ell, q - 1) = 1. Requires ell prime and not
// the characteristic of F_q.
KummerVerdict kummer_exceptionality_oracle(std::int64_t ell, std::int64_t q);

} // namespace covlab
