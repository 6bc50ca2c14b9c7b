#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace daniell {

// Exact arbitrary-precision rational; the only scalar type in the core.
// Always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

Rational rat(std::int64_t num, std::int64_t den = 1);

// Parses "p/q" or "p" in base 10. No decimals. Throws std::invalid_argument.
Rational rat_parse(const std::string& text);

// Lowest-terms "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rational& q);

Rational rat_abs(const Rational& q);

// 2^e, e may be negative.
Rational pow2(std::int64_t e);

// q^e for e >= 0.
Rational rat_pow(const Rational& q, std::int64_t e);

}  // namespace daniell
