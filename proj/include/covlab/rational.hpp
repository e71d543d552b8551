#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "covlab/error.hpp"

namespace covlab {

// Exact rational with int64 parts, reduced with a positive denominator.
// Magnitudes here stay small (Hilbert coefficients of surfaces), so plain
// 64-bit arithmetic is enough; overflow throws rather than wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw ValidationError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }

    Rational operator+(const Rational& o) const {
        return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                        checked_mul(den, o.den));
    }
    Rational operator*(const Rational& o) const {
        return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
    }
    Rational operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r = 0;
        if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("rational arithmetic overflow");
        return r;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r = 0;
        if (__builtin_add_overflow(a, b, &r)) throw ValidationError("rational arithmetic overflow");
        return r;
    }
};

} // namespace covlab
