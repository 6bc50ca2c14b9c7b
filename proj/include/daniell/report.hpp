#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daniell/rational.hpp"

namespace daniell {

enum class Verdict { Pass, Fail, Inconclusive };

std::string verdict_str(Verdict v);

/// Result of one harness check. A fail carries a concrete witness (the
/// violating exact inequality, in `witness`); an inconclusive result carries
/// the best certified bound achieved.
struct CheckReport {
  std::string check;
  std::string scenario;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Rational> bound;  // best certified bound achieved
  std::optional<Rational> eps;
  std::int64_t iterations = 0;
  std::uint64_t seed = 0;
  std::string witness;  // empty unless verdict == Fail
  std::string detail;
  std::vector<std::string> trace;  // optional per-step exact trace
};

}  // namespace daniell
