#include "daniell/measure.hpp"

#include <algorithm>

namespace daniell {

IntegrableSet IntegrableSet::from_boxes(BoxSet boxes) {
  IntegrableSet s;
  s.indicator_ = from_elementary(SpaceDesc::boxes(boxes.dim()),
                                 SimpleFunction::indicator(boxes));
  s.exact_ = std::move(boxes);
  return s;
}

IntegrableSet IntegrableSet::from_series(SeriesFunction indicator) {
  IntegrableSet s;
  s.indicator_ = std::move(indicator);
  return s;
}

const BoxSet& IntegrableSet::boxes() const {
  if (!exact_) throw std::logic_error("integrable set: no exact box form");
  return *exact_;
}

MeasureValue mu_of(const IntegrableSet& a, const Rational& eps, std::int64_t budget) {
  if (eps <= 0) throw std::invalid_argument("mu_of: eps must be positive");
  if (a.exact()) return MeasureValue::exact(measure(a.boxes()));
  return MeasureValue::of(integral_enclosure(a.indicator(), eps, budget));
}

IntegrableSet set_combine(const IntegrableSet& u, const IntegrableSet& v, SetOp op) {
  if (u.space() != v.space()) throw std::invalid_argument("space mismatch");
  if (u.exact() && v.exact()) {
    switch (op) {
      case SetOp::Difference: return IntegrableSet::from_boxes(diff(u.boxes(), v.boxes()));
      case SetOp::Union: return IntegrableSet::from_boxes(unite(u.boxes(), v.boxes()));
      case SetOp::Intersection:
        return IntegrableSet::from_boxes(intersect(u.boxes(), v.boxes()));
    }
  }
  const SeriesFunction& a = u.indicator();
  const SeriesFunction& b = v.indicator();
  const SeriesFunction common = series_min(a, b);
  switch (op) {
    case SetOp::Intersection: return IntegrableSet::from_series(common);
    case SetOp::Difference:
      return IntegrableSet::from_series(series_add(a, series_scale(common, Rational(-1))));
    case SetOp::Union:
      return IntegrableSet::from_series(
          series_add(series_add(a, b), series_scale(common, Rational(-1))));
  }
  throw std::logic_error("unreachable");
}

SigmaUnion sigma_union(const SpaceDesc& space, const std::vector<IntegrableSet>& members,
                       std::optional<ElementaryTail> tail, bool declared_divergent,
                       const Rational& eps, std::int64_t budget) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i].exact() && members[j].exact() &&
          !disjoint(members[i].boxes(), members[j].boxes()))
        throw std::invalid_argument("sigma_union: members overlap");

  if (declared_divergent) return SigmaUnion{std::nullopt, MeasureValue::inf()};
  if (members.empty() && !tail)
    throw std::invalid_argument("sigma_union: nothing to unite");
  for (const auto& m : members)
    if (m.space() != space) throw std::invalid_argument("space mismatch");

  if (!tail) {
    bool all_exact = true;
    for (const auto& m : members) all_exact = all_exact && m.exact();
    if (all_exact) {
      std::vector<Box> boxes;
      for (const auto& m : members)
        for (const auto& b : m.boxes().boxes()) boxes.push_back(b);
      BoxSet u = BoxSet::of(space.dim(), std::move(boxes));
      MeasureValue mv = MeasureValue::exact(measure(u));
      return SigmaUnion{IntegrableSet::from_boxes(std::move(u)), std::move(mv)};
    }
  }

  std::vector<SeriesFunction> indicators;
  for (const auto& m : members) indicators.push_back(m.indicator());
  SeriesFunction flat = flatten_double_series(space, std::move(indicators), std::move(tail), budget);
  MeasureValue mv = MeasureValue::of(integral_enclosure(flat, eps, budget));
  return SigmaUnion{IntegrableSet::from_series(std::move(flat)), std::move(mv)};
}

SimpleFunction dyadic_decomposition(const SimpleFunction& f, int level) {
  if (level < 1) throw std::invalid_argument("dyadic_decomposition: level must be >= 1");
  if (!nonnegative(f))
    throw std::invalid_argument("dyadic_decomposition: negative coefficient present");
  if (f.is_zero()) return f;

  const Rational m = sup_abs(f);
  const Rational step = m * pow2(-level);  // bucket height M / 2^level
  std::vector<SimpleFunction::Term> terms;
  for (const auto& t : f.terms()) {
    // Bucket index k = ceil(coef / step); value rounds down to (k-1)*step.
    const Rational q = t.coef / step;
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    Rational down = Rational(k - 1) * step;
    if (down != 0) terms.push_back({t.box, std::move(down)});
  }
  return SimpleFunction::from_terms(f.dim(), std::move(terms));
}

SeriesFunction truncate_at(const SeriesFunction& f, const Rational& cap,
                           std::optional<Box> declared_support) {
  if (cap <= 0) throw std::invalid_argument("truncate_at: cap must be positive");
  if (f.zero_tail()) {
    Elem s = partial_sum_elem(f, f.prefix_len());
    return from_elementary(f.space(), elem_min_const(s, cap));
  }
  if (f.disjoint_term_supports()) {
    // Terms live on pairwise disjoint supports, so the pointwise minimum
    // clips each term independently; |clip| <= |term| keeps bounds valid.
    std::vector<Elem> prefix;
    for (std::int64_t n = 1; n <= f.prefix_len(); ++n)
      prefix.push_back(elem_min_const(f.term(n), cap));
    auto gen = [f, cap](std::int64_t n) { return elem_min_const(f.term(n), cap); };
    auto bound = [f](std::int64_t k) { return f.bound(k); };
    SeriesFunction::PointwiseFn pw;
    if (f.has_pointwise()) {
      pw = [f](std::int64_t k, const EvalPoint& x) { return f.pointwise_tail(k, x); };
    }
    return SeriesFunction::with_tail(f.space(), std::move(prefix), std::move(gen),
                                     std::move(bound), std::move(pw), true);
  }
  if (declared_support) {
    if (f.space().kind() != SpaceDesc::Kind::Boxes)
      throw std::invalid_argument("truncate_at: support box only applies to box spaces");
    const SimpleFunction capfn = SimpleFunction::indicator(*declared_support, cap);
    return series_min(f, from_elementary(f.space(), capfn));
  }
  throw std::invalid_argument(
      "truncate_at: unbounded support without declared support box");
}

CheckReport stone_check(const SpaceDesc& space, std::int64_t trials, std::uint64_t seed) {
  CheckReport report;
  report.check = "stone";
  report.scenario = space.id();
  report.seed = seed;

  Rng rng(seed);
  const Rational one(1);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const Elem f = random_element(rng, space);
    const Elem clipped = elem_min_const(f, one);
    ++report.iterations;
    if (!space.compatible(clipped)) {
      report.verdict = Verdict::Fail;
      report.witness = "f∧1 left the space at trial " + std::to_string(trial);
      return report;
    }
    // Clipping must agree with the pointwise minimum at sampled points,
    // both inside and outside the support.
    for (int s = 0; s < 8; ++s) {
      const EvalPoint x = random_eval_point(rng, space);
      if (elem_eval(clipped, x) != std::min(elem_eval(f, x), one)) {
        report.verdict = Verdict::Fail;
        report.witness = "f∧1 mismatch at sampled point, trial " + std::to_string(trial);
        return report;
      }
    }
    // Idempotence of clipping.
    if (!(elem_min_const(clipped, one) == clipped)) {
      report.verdict = Verdict::Fail;
      report.witness = "clipping not idempotent at trial " + std::to_string(trial);
      return report;
    }
  }
  report.verdict = Verdict::Pass;
  report.detail = "f∧1 exact on " + std::to_string(trials) + " random elements";
  return report;
}

}  // namespace daniell
