#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flowinc {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Thrown by every parser in the library; carries the 1-based line when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Canonical "p/q" text (q >= 1 always printed).
std::string to_string(const Rational& q);
std::string to_string(std::span<const Rational> v, char sep = ',');

/// Accepts "p/q", "p", and optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);
RationalVector parse_rational_list(std::string_view text, char sep = ',');

Integer factorial(unsigned k);
Integer binomial(unsigned n, unsigned k);

/// Floor of the square root; nullopt-free: exact test via is_perfect_square.
std::uint64_t isqrt(std::uint64_t n);
bool is_perfect_square(std::uint64_t n);

/// Simplest rational strictly inside (lo, hi); lo < hi required.
Rational simplest_between(const Rational& lo, const Rational& hi);

int sign(const Rational& q);

}  // namespace flowinc
