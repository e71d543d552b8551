#pragma once

#include <cstdint>

#include "covlab/error.hpp"

namespace covlab {

// Default cap on field-element visits per enumeration-style operation.
inline constexpr std::int64_t kDefaultBudget = 100'000'000;

// Enumeration cap checked before an operation starts any real work.
struct Budget {
    std::int64_t limit = kDefaultBudget;

    void require(std::int64_t estimated_visits) const {
        if (estimated_visits < 0 || estimated_visits > limit)
            throw BudgetError(estimated_visits, limit);
    }
};

// base^exp clamped to cap + 1 so callers can compare against a budget
// without overflow. Requires base >= 0, exp >= 0, cap >= 0.
inline std::int64_t saturating_pow(std::int64_t base, std::int64_t exp, std::int64_t cap) {
    std::int64_t result = 1;
    if (result > cap) return cap + 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > cap / base) return cap + 1;
        result *= base;
        if (result > cap) return cap + 1;
    }
    return result;
}

} // namespace covlab
