#pragma once

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "daniell/series.hpp"

namespace daniell {

using Json = nlohmann::json;

/// A named sequence of elementary functions with exact per-step metadata;
/// the vocabulary for the convergence-theorem checks. Fields are populated
/// as far as they are meaningful for the family.
struct SequenceFamily {
  std::string name;
  SpaceDesc space = SpaceDesc::counting();
  std::function<Elem(std::int64_t)> element;            // f_n, n >= 1
  std::function<Rational(std::int64_t)> integral_of;    // exact ∫f_n (null: integrate element)
  std::optional<Rational> limit_integral;               // lim ∫f_n
  std::optional<Rational> bound_m;                      // declared bound M
  std::optional<Elem> dominator;                        // h with |f_n| <= h
  std::optional<Elem> limit_elem;                       // exact elementary limit
  std::optional<std::function<Rational(std::int64_t)>> norm_to_limit;  // exact ‖f_n − f‖
  bool nondecreasing = false;
  bool nonincreasing = false;
  std::optional<std::int64_t> horizon;  // natural step horizon for bounded checks

  Rational integral_at(std::int64_t n) const {
    return integral_of ? integral_of(n) : elem_integral(element(n));
  }
};

// Families for condition II / MCT / DCT / Fatou / subsequence checks.
// Throws std::invalid_argument("unknown family ...") for unknown names.
SequenceFamily make_sequence_family(const std::string& name, const SpaceDesc& space,
                                    const Json& params);

// Series built from a tail-family description ({"family":"geometric_boxes",
// "ratio":"1/2","box_rule":"unit_shift"} etc.); empty prefix.
SeriesFunction make_family_series(const SpaceDesc& space, const Json& tail);

// Whole-series families for the completeness check, including a
// fault-injected variant with deliberately understated bounds.
SeriesFunction make_banach_series(const std::string& name, const SpaceDesc& space,
                                  const Json& params);

// Elementary outer tails for sigma-union scenarios.
std::optional<ElementaryTail> make_outer_tail(const SpaceDesc& space, const Json& tail);

}  // namespace daniell
