#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace covlab {

// Base class for all covlab errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text: polynomial expressions, GF literals, problem files.
// Carries a 1-based line number when the source is a problem file.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const { return line_; }

private:
    int line_ = 0;
};

// Well-formed input that violates a contract: reducible modulus, inhomogeneous
// projective equation, point off its variety, mismatched fields, and so on.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An operation would visit more field elements than the configured cap.
class BudgetError : public Error {
public:
    BudgetError(std::int64_t needed, std::int64_t limit)
        : Error("enumeration budget exceeded: needs at least " + std::to_string(needed) +
                " field-element visits, limit is " + std::to_string(limit)),
          needed_(needed), limit_(limit) {}

    std::int64_t needed() const { return needed_; }
    std::int64_t limit() const { return limit_; }

private:
    std::int64_t needed_;
    std::int64_t limit_;
};

} // namespace covlab
