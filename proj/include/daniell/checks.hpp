#pragma once

#include "daniell/families.hpp"
#include "daniell/measure.hpp"
#include "daniell/report.hpp"

namespace daniell {

/// One scenario: which check, over which space and family, at what
/// tolerance / budget / seed. Defaults: eps = 2^-20, budget = 10^4.
struct ScenarioSpec {
  std::string name = "adhoc";
  std::string check;
  std::string space = "boxes:1";
  std::string family;
  Json params = Json::object();
  Rational eps = pow2(-20);
  std::int64_t budget = 10000;
  std::uint64_t seed = 0;
};

// Pass iff the family's integral trace is exactly nonincreasing and falls
// strictly below eps within the budget; a monotonicity violation fails with
// the witness step; budget exhaustion is inconclusive with the best bound.
CheckReport check_condition_ii(const ScenarioSpec& spec);

// Monotone convergence: |∫f_n| <= M exactly at every materialized step; the
// limit series f_1 + (f_2-f_1) + ... has an integral enclosure within eps
// of the declared limit and upper bound <= M + eps.
CheckReport check_mct(const ScenarioSpec& spec);

// Dominated convergence: |f_n| <= h checked exactly on canonical cells each
// step; pass when the exact norm ‖f_n - f‖ falls strictly below eps.
CheckReport check_dct(const ScenarioSpec& spec);

// Fatou: nonnegativity and ∫f_n <= M exact over the horizon; limit integral
// enclosure upper bound <= M + eps (strict gaps are recorded).
CheckReport check_fatou(const ScenarioSpec& spec);

// Completeness: with K the refinement reaching B_K <= eps, verifies the
// exact residual inequalities ∫|f_{k+1}+...+f_K| + B_K <= B_k for every
// k <= K (the norm upper bound of f - s_k at matched refinement).
CheckReport check_banach_completeness(const ScenarioSpec& spec);

struct SubseqStep {
  std::int64_t index;
  Rational cert;  // certified ‖f_{p_n} - f‖, strictly below 2^-n
};
struct SubseqResult {
  std::vector<SubseqStep> steps;
  bool complete = false;
  std::int64_t scanned = 0;
};

// Minimal strictly increasing indices p_n with certified norm < 2^-n; stops
// when `count` indices are found or the scan budget runs out.
SubseqResult extract_ae_subsequence(const std::function<Rational(std::int64_t)>& norm_upper,
                                    std::int64_t count, std::int64_t budget);

CheckReport check_subsequence(const ScenarioSpec& spec);

// Dispatch on spec.check: condition_ii, mct, dct, fatou, banach,
// subsequence, axioms, stone. Throws std::invalid_argument on unknown names.
CheckReport run_check(const ScenarioSpec& spec);

}  // namespace daniell
