#pragma once

#include <cstdint>
#include <random>

#include "daniell/rational.hpp"

namespace daniell {

// Deterministic RNG. mt19937_64 output is fixed by the standard and the
// derived draws below avoid std distributions, so identical seeds give
// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform on [lo, hi], inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  bool chance(std::int64_t num, std::int64_t den) { return uniform(1, den) <= num; }

  // Rational with numerator in [-max_abs_num, max_abs_num], denominator in [1, max_den].
  Rational rational(std::int64_t max_abs_num, std::int64_t max_den) {
    return rat(uniform(-max_abs_num, max_abs_num), uniform(1, max_den));
  }

  Rational nonzero_rational(std::int64_t max_abs_num, std::int64_t max_den) {
    Rational q = rat(uniform(1, max_abs_num), uniform(1, max_den));
    return chance(1, 2) ? Rational(-q) : q;
  }

  Rational positive_rational(std::int64_t max_num, std::int64_t max_den) {
    return rat(uniform(1, max_num), uniform(1, max_den));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace daniell
