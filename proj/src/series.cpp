#include "daniell/series.hpp"

#include <algorithm>
#include <utility>

namespace daniell {

EvalResult EvalResult::exact(Rational v) {
  EvalResult r;
  r.kind = Kind::Exact;
  r.value = std::move(v);
  return r;
}

EvalResult EvalResult::enclosed(Enclosure e) {
  EvalResult r;
  r.kind = Kind::Enclosed;
  r.enclosure = std::move(e);
  return r;
}

EvalResult EvalResult::unknown() { return EvalResult{}; }

SeriesFunction SeriesFunction::finite(SpaceDesc space, std::vector<Elem> terms) {
  for (const auto& t : terms)
    if (!space.compatible(t)) throw std::invalid_argument("series: term not in space");
  SeriesFunction f;
  f.space_ = std::move(space);
  f.disjoint_supports_ = terms.size() <= 1;
  f.terms_ = std::make_shared<const std::vector<Elem>>(std::move(terms));
  return f;
}

SeriesFunction SeriesFunction::with_tail(SpaceDesc space, std::vector<Elem> prefix, TermFn gen,
                                         BoundFn bound, PointwiseFn pointwise,
                                         bool disjoint_term_supports) {
  if (!gen || !bound) throw std::invalid_argument("series: tail needs generator and bound");
  for (const auto& t : prefix)
    if (!space.compatible(t)) throw std::invalid_argument("series: term not in space");
  SeriesFunction f;
  f.space_ = std::move(space);
  f.terms_ = std::make_shared<const std::vector<Elem>>(std::move(prefix));
  f.gen_ = std::move(gen);
  f.bound_ = std::move(bound);
  f.pointwise_ = std::move(pointwise);
  f.disjoint_supports_ = disjoint_term_supports;
  return f;
}

bool SeriesFunction::has_pointwise() const { return zero_tail() || bool(pointwise_); }

Elem SeriesFunction::term(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("series term index must be >= 1");
  if (n <= prefix_len()) return (*terms_)[static_cast<std::size_t>(n - 1)];
  if (!gen_) return space_.zero();
  return gen_(n);
}

Rational SeriesFunction::bound(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("series bound index must be >= 0");
  if (!gen_) {
    Rational total(0);
    for (std::int64_t n = k + 1; n <= prefix_len(); ++n)
      total += elem_abs_integral((*terms_)[static_cast<std::size_t>(n - 1)]);
    return total;
  }
  return bound_(k);
}

std::optional<PointwiseTail> SeriesFunction::pointwise_tail(std::int64_t k,
                                                            const EvalPoint& x) const {
  if (!gen_) {
    Rational total(0);
    for (std::int64_t n = k + 1; n <= prefix_len(); ++n)
      total += rat_abs(elem_eval((*terms_)[static_cast<std::size_t>(n - 1)], x));
    return PointwiseTail::of(std::move(total));
  }
  if (!pointwise_) return std::nullopt;
  return pointwise_(k, x);
}

SeriesFunction from_elementary(SpaceDesc space, Elem e) {
  std::vector<Elem> terms;
  terms.push_back(std::move(e));
  return SeriesFunction::finite(std::move(space), std::move(terms));
}

SeriesFunction refine_prefix(const SeriesFunction& f, std::int64_t k) {
  if (f.zero_tail() || k <= f.prefix_len()) return f;
  std::vector<Elem> terms;
  terms.reserve(static_cast<std::size_t>(k));
  for (std::int64_t n = 1; n <= k; ++n) terms.push_back(f.term(n));
  // Rebuild around the same tail; absolute indexing keeps bounds unchanged.
  return SeriesFunction::with_tail(
      f.space(), std::move(terms), [f](std::int64_t n) { return f.term(n); },
      [f](std::int64_t j) { return f.bound(j); },
      f.has_pointwise()
          ? SeriesFunction::PointwiseFn([f](std::int64_t j, const EvalPoint& x) {
              return f.pointwise_tail(j, x);
            })
          : SeriesFunction::PointwiseFn(nullptr),
      f.disjoint_term_supports());
}

Elem partial_sum_elem(const SeriesFunction& f, std::int64_t k) {
  Elem s = f.space().zero();
  for (std::int64_t n = 1; n <= k; ++n) s = elem_add(s, f.term(n));
  return s;
}

namespace {

void require_same_space(const SeriesFunction& f, const SeriesFunction& g) {
  if (f.space() != g.space()) throw std::invalid_argument("space mismatch");
}

std::optional<PointwiseTail> add_tails(const std::optional<PointwiseTail>& a,
                                       const std::optional<PointwiseTail>& b) {
  if (!a || !b) return std::nullopt;
  if (a->kind == PointwiseTail::Kind::Divergent || b->kind == PointwiseTail::Kind::Divergent)
    return PointwiseTail::divergent();
  return PointwiseTail::of(a->bound + b->bound);
}

}  // namespace

SeriesFunction series_add(const SeriesFunction& f, const SeriesFunction& g) {
  require_same_space(f, g);
  if (f.zero_tail() && g.zero_tail()) {
    // Finite series: termwise addition is an equivalent regrouping.
    const std::int64_t len = std::max(f.prefix_len(), g.prefix_len());
    std::vector<Elem> terms;
    for (std::int64_t n = 1; n <= len; ++n) terms.push_back(elem_add(f.term(n), g.term(n)));
    while (!terms.empty() && elem_is_zero(terms.back())) terms.pop_back();
    return SeriesFunction::finite(f.space(), std::move(terms));
  }
  auto gen = [f, g](std::int64_t n) {
    return (n % 2 == 1) ? f.term((n + 1) / 2) : g.term(n / 2);
  };
  auto bound = [f, g](std::int64_t k) {
    return Rational(f.bound((k + 1) / 2) + g.bound(k / 2));
  };
  SeriesFunction::PointwiseFn pw;
  if (f.has_pointwise() && g.has_pointwise()) {
    pw = [f, g](std::int64_t k, const EvalPoint& x) {
      return add_tails(f.pointwise_tail((k + 1) / 2, x), g.pointwise_tail(k / 2, x));
    };
  }
  return SeriesFunction::with_tail(f.space(), {}, std::move(gen), std::move(bound),
                                   std::move(pw));
}

SeriesFunction series_scale(const SeriesFunction& f, const Rational& lambda) {
  if (lambda == 0) return SeriesFunction::finite(f.space(), {});
  std::vector<Elem> prefix;
  for (std::int64_t n = 1; n <= f.prefix_len(); ++n)
    prefix.push_back(elem_scale(f.term(n), lambda));
  if (f.zero_tail()) return SeriesFunction::finite(f.space(), std::move(prefix));
  const Rational mag = rat_abs(lambda);
  auto gen = [f, lambda](std::int64_t n) { return elem_scale(f.term(n), lambda); };
  auto bound = [f, mag](std::int64_t k) { return Rational(mag * f.bound(k)); };
  SeriesFunction::PointwiseFn pw;
  if (f.has_pointwise()) {
    pw = [f, mag](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      auto t = f.pointwise_tail(k, x);
      if (!t) return std::nullopt;
      if (t->kind == PointwiseTail::Kind::Divergent) return t;
      return PointwiseTail::of(mag * t->bound);
    };
  }
  return SeriesFunction::with_tail(f.space(), std::move(prefix), std::move(gen),
                                   std::move(bound), std::move(pw),
                                   f.disjoint_term_supports());
}

namespace {

// Thread-safe memo of elementary partial sums s_j of a series; generators
// stay pure index->term maps.
class PartialSums {
 public:
  explicit PartialSums(SeriesFunction f) : f_(std::move(f)) {}

  Elem at(std::int64_t j) const {
    if (j <= 0) return f_.space().zero();
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<std::int64_t>(sums_.size()) < j) {
      const std::int64_t n = static_cast<std::int64_t>(sums_.size()) + 1;
      Elem prev = sums_.empty() ? f_.space().zero() : sums_.back();
      sums_.push_back(elem_add(prev, f_.term(n)));
    }
    return sums_[static_cast<std::size_t>(j - 1)];
  }

  const SeriesFunction& series() const { return f_; }

 private:
  SeriesFunction f_;
  mutable std::mutex mu_;
  mutable std::vector<Elem> sums_;
};

// abs-series term stream: n = 3j-2 -> g_j = |s_j| - |s_{j-1}|,
// n = 3j-1 -> f_j, n = 3j -> -f_j.
Elem abs_series_term(const PartialSums& sums, std::int64_t n) {
  switch (n % 3) {
    case 1: {
      const std::int64_t j = (n + 2) / 3;
      return elem_add(elem_abs(sums.at(j)), elem_scale(elem_abs(sums.at(j - 1)), Rational(-1)));
    }
    case 2: return sums.series().term((n + 1) / 3);
    default: return elem_scale(sums.series().term(n / 3), Rational(-1));
  }
}

}  // namespace

SeriesFunction series_abs(const SeriesFunction& f) {
  auto sums = std::make_shared<PartialSums>(f);
  if (f.zero_tail()) {
    std::vector<Elem> terms;
    const std::int64_t len = 3 * f.prefix_len();
    for (std::int64_t n = 1; n <= len; ++n) terms.push_back(abs_series_term(*sums, n));
    return SeriesFunction::finite(f.space(), std::move(terms));
  }
  auto gen = [sums](std::int64_t n) { return abs_series_term(*sums, n); };
  // |g_j| <= |f_j|, so bounds triple the source bounds; partial corrections
  // inside a block keep the bound consistent under single-step refinement.
  auto bound = [sums, f](std::int64_t k) {
    const std::int64_t m = k / 3;
    Rational b = 3 * f.bound(m);
    if (k % 3 >= 1) b -= elem_abs_integral(abs_series_term(*sums, 3 * m + 1));
    if (k % 3 == 2) b -= elem_abs_integral(f.term(m + 1));
    return b;
  };
  SeriesFunction::PointwiseFn pw;
  if (f.has_pointwise()) {
    pw = [f](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      auto t = f.pointwise_tail(k / 3, x);
      if (!t) return std::nullopt;
      if (t->kind == PointwiseTail::Kind::Divergent) return t;
      return PointwiseTail::of(3 * t->bound);
    };
  }
  return SeriesFunction::with_tail(f.space(), {}, std::move(gen), std::move(bound),
                                   std::move(pw));
}

SeriesFunction series_max(const SeriesFunction& f, const SeriesFunction& g) {
  // f ∨ g = (f + g + |f − g|) / 2
  const SeriesFunction diff = series_add(f, series_scale(g, Rational(-1)));
  return series_scale(series_add(series_add(f, g), series_abs(diff)), rat(1, 2));
}

SeriesFunction series_min(const SeriesFunction& f, const SeriesFunction& g) {
  // f ∧ g = (f + g − |f − g|) / 2
  const SeriesFunction diff = series_add(f, series_scale(g, Rational(-1)));
  return series_scale(
      series_add(series_add(f, g), series_scale(series_abs(diff), Rational(-1))), rat(1, 2));
}

namespace {

// Smallest k in [0, budget] with bound(k) <= eps (bounds are nonincreasing).
std::int64_t min_refinement(const SeriesFunction& f, const Rational& eps,
                            std::int64_t budget, const char* what) {
  if (budget < 0) budget = 0;
  if (f.bound(budget) > eps)
    throw BudgetExceeded(std::string(what) + ": tail bound not below " + rat_str(eps) +
                             " within budget " + std::to_string(budget),
                         f.bound(budget));
  std::int64_t lo = 0, hi = budget;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (f.bound(mid) <= eps)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

Enclosure integral_enclosure_at(const SeriesFunction& f, std::int64_t k) {
  Rational s(0);
  for (std::int64_t n = 1; n <= k; ++n) s += elem_integral(f.term(n));
  const Rational b = f.bound(k);
  return Enclosure{s - b, s + b};
}

EnclosureDetail integral_enclosure_detail(const SeriesFunction& f, const Rational& eps,
                                          std::int64_t budget) {
  if (eps <= 0) throw std::invalid_argument("integral_enclosure: eps must be positive");
  const std::int64_t k = min_refinement(f, eps, budget, "integral_enclosure");
  return {integral_enclosure_at(f, k), k};
}

Enclosure integral_enclosure(const SeriesFunction& f, const Rational& eps,
                             std::int64_t budget) {
  return integral_enclosure_detail(f, eps, budget).enc;
}

Enclosure norm_enclosure_at(const SeriesFunction& f, std::int64_t k) {
  const Rational v = elem_abs_integral(partial_sum_elem(f, k));
  const Rational b = f.bound(k);
  return Enclosure{std::max(Rational(0), Rational(v - b)), v + b};
}

EnclosureDetail norm_enclosure_detail(const SeriesFunction& f, const Rational& eps,
                                      std::int64_t budget) {
  if (eps <= 0) throw std::invalid_argument("norm_enclosure: eps must be positive");
  const std::int64_t k = min_refinement(f, eps, budget, "norm_enclosure");
  return {norm_enclosure_at(f, k), k};
}

Enclosure norm_enclosure(const SeriesFunction& f, const Rational& eps, std::int64_t budget) {
  return norm_enclosure_detail(f, eps, budget).enc;
}

SeriesFunction renormalize_eps(const SeriesFunction& f, const Rational& eps,
                               std::int64_t budget) {
  if (eps <= 0) throw std::invalid_argument("renormalize_eps: eps must be positive");
  const Rational quarter = eps / 4;
  std::int64_t k0 = min_refinement(f, quarter, budget, "renormalize_eps");
  if (f.zero_tail()) {
    // Collapse the head exactly; the result stays a finite series.
    k0 = std::min(k0, f.prefix_len());
    std::vector<Elem> terms;
    terms.push_back(partial_sum_elem(f, k0));
    for (std::int64_t n = k0 + 1; n <= f.prefix_len(); ++n) terms.push_back(f.term(n));
    return SeriesFunction::finite(f.space(), std::move(terms));
  }
  Elem head = partial_sum_elem(f, k0);
  const Rational total = elem_abs_integral(head) + f.bound(k0);
  std::vector<Elem> prefix;
  prefix.push_back(head);
  auto gen = [f, k0](std::int64_t n) { return f.term(k0 + n - 1); };
  auto bound = [f, k0, total](std::int64_t k) {
    return k == 0 ? total : f.bound(k0 + k - 1);
  };
  SeriesFunction::PointwiseFn pw;
  if (f.has_pointwise()) {
    pw = [f, k0, head](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      if (k >= 1) return f.pointwise_tail(k0 + k - 1, x);
      auto t = f.pointwise_tail(k0, x);
      if (!t) return std::nullopt;
      if (t->kind == PointwiseTail::Kind::Divergent) return t;
      return PointwiseTail::of(rat_abs(elem_eval(head, x)) + t->bound);
    };
  }
  return SeriesFunction::with_tail(f.space(), std::move(prefix), std::move(gen),
                                   std::move(bound), std::move(pw));
}

SeriesFunction regroup_series(const SeriesFunction& f,
                              const std::vector<std::int64_t>& blocks) {
  std::vector<std::int64_t> ends;
  std::int64_t pos = 0;
  for (const auto b : blocks) {
    if (b < 1) throw std::invalid_argument("regroup_series: block sizes must be >= 1");
    pos += b;
    ends.push_back(pos);
  }
  const std::int64_t covered = pos;
  const std::int64_t m = static_cast<std::int64_t>(ends.size());

  std::vector<Elem> head;
  std::int64_t start = 1;
  for (const auto end : ends) {
    Elem s = f.space().zero();
    for (std::int64_t n = start; n <= end; ++n) s = elem_add(s, f.term(n));
    head.push_back(std::move(s));
    start = end + 1;
  }
  if (f.zero_tail()) {
    for (std::int64_t n = covered + 1; n <= f.prefix_len(); ++n) head.push_back(f.term(n));
    return SeriesFunction::finite(f.space(), std::move(head));
  }
  // After k merged blocks the remaining terms are exactly the source terms
  // past the k-th block end, so the source bound there is sound.
  auto gen = [f, covered, m](std::int64_t n) { return f.term(covered + (n - m)); };
  auto bound = [f, covered, m, ends](std::int64_t k) {
    if (k >= m) return f.bound(covered + (k - m));
    return f.bound(k == 0 ? 0 : ends[static_cast<std::size_t>(k - 1)]);
  };
  SeriesFunction::PointwiseFn pw;
  if (f.has_pointwise()) {
    pw = [f, covered, m, ends](std::int64_t k, const EvalPoint& x) {
      const std::int64_t base = k >= m ? covered + (k - m)
                                       : (k == 0 ? 0 : ends[static_cast<std::size_t>(k - 1)]);
      return f.pointwise_tail(base, x);
    };
  }
  return SeriesFunction::with_tail(f.space(), std::move(head), std::move(gen),
                                   std::move(bound), std::move(pw));
}

SeriesFunction prepend_terms(std::vector<Elem> front, const SeriesFunction& f) {
  const std::int64_t p0 = static_cast<std::int64_t>(front.size());
  if (p0 == 0) return f;
  if (f.zero_tail()) {
    for (std::int64_t n = 1; n <= f.prefix_len(); ++n) front.push_back(f.term(n));
    return SeriesFunction::finite(f.space(), std::move(front));
  }
  auto front_shared = std::make_shared<const std::vector<Elem>>(front);
  auto gen = [f, p0](std::int64_t n) { return f.term(n - p0); };
  auto bound = [f, p0, front_shared](std::int64_t k) {
    if (k >= p0) return f.bound(k - p0);
    Rational b = f.bound(0);
    for (std::int64_t n = k + 1; n <= p0; ++n)
      b += elem_abs_integral((*front_shared)[static_cast<std::size_t>(n - 1)]);
    return b;
  };
  SeriesFunction::PointwiseFn pw;
  if (f.has_pointwise()) {
    pw = [f, p0, front_shared](std::int64_t k,
                               const EvalPoint& x) -> std::optional<PointwiseTail> {
      auto t = f.pointwise_tail(std::max<std::int64_t>(0, k - p0), x);
      if (!t) return std::nullopt;
      if (t->kind == PointwiseTail::Kind::Divergent) return t;
      Rational b = t->bound;
      for (std::int64_t n = k + 1; n <= p0; ++n)
        b += rat_abs(elem_eval((*front_shared)[static_cast<std::size_t>(n - 1)], x));
      return PointwiseTail::of(std::move(b));
    };
  }
  return SeriesFunction::with_tail(f.space(), std::move(front), std::move(gen),
                                   std::move(bound), std::move(pw));
}

namespace {

// Diagonal (i+n constant, i increasing) enumeration over m infinite streams
// plus optional one-term outer streams at i > m.
class DiagonalPlan {
 public:
  DiagonalPlan(std::int64_t m, bool has_outer) : m_(m), has_outer_(has_outer) {}

  std::pair<std::int64_t, std::int64_t> pair_at(std::int64_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(k);
    return pairs_[static_cast<std::size_t>(k - 1)];
  }

  // Number of terms taken from each explicit stream, and from the outer
  // stream, among the first k merged terms.
  std::pair<std::vector<std::int64_t>, std::int64_t> counts(std::int64_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(k);
    std::vector<std::int64_t> c(static_cast<std::size_t>(m_), 0);
    std::int64_t outer = 0;
    for (std::int64_t j = 0; j < k; ++j) {
      const auto& [i, n] = pairs_[static_cast<std::size_t>(j)];
      if (i <= m_)
        ++c[static_cast<std::size_t>(i - 1)];
      else
        ++outer;
    }
    return {std::move(c), outer};
  }

 private:
  void ensure(std::int64_t k) const {
    while (static_cast<std::int64_t>(pairs_.size()) < k) {
      ++diag_;
      for (std::int64_t i = 1; i < diag_; ++i) {
        const std::int64_t n = diag_ - i;
        if (i <= m_)
          pairs_.emplace_back(i, n);
        else if (has_outer_ && n == 1)
          pairs_.emplace_back(i, 1);
      }
    }
  }

  std::int64_t m_;
  bool has_outer_;
  mutable std::mutex mu_;
  mutable std::vector<std::pair<std::int64_t, std::int64_t>> pairs_;
  mutable std::int64_t diag_ = 1;
};

}  // namespace

SeriesFunction flatten_double_series(SpaceDesc space, std::vector<SeriesFunction> fs,
                                     std::optional<ElementaryTail> outer,
                                     std::int64_t budget) {
  for (const auto& f : fs)
    if (f.space() != space) throw std::invalid_argument("space mismatch");

  auto inner = std::make_shared<std::vector<SeriesFunction>>();
  bool all_zero_tail = !outer;
  bool all_pointwise = !outer || bool(outer->pointwise);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    inner->push_back(renormalize_eps(fs[i], pow2(-static_cast<std::int64_t>(i + 1)), budget));
    all_zero_tail = all_zero_tail && inner->back().zero_tail();
    all_pointwise = all_pointwise && inner->back().has_pointwise();
  }
  const std::int64_t m = static_cast<std::int64_t>(inner->size());

  if (all_zero_tail) {
    // Everything is finite: merge diagonally into an explicit list.
    DiagonalPlan plan(m, false);
    std::int64_t remaining = 0;
    for (const auto& g : *inner) remaining += g.prefix_len();
    std::vector<Elem> terms;
    std::int64_t k = 0;
    while (remaining > 0) {
      const auto [i, n] = plan.pair_at(++k);
      if (n <= (*inner)[static_cast<std::size_t>(i - 1)].prefix_len()) --remaining;
      terms.push_back((*inner)[static_cast<std::size_t>(i - 1)].term(n));
    }
    while (!terms.empty() && elem_is_zero(terms.back())) terms.pop_back();
    return SeriesFunction::finite(space, std::move(terms));
  }

  auto plan = std::make_shared<DiagonalPlan>(m, bool(outer));
  auto outer_shared =
      outer ? std::make_shared<ElementaryTail>(std::move(*outer)) : nullptr;

  auto gen = [inner, plan, outer_shared, m](std::int64_t k) {
    const auto [i, n] = plan->pair_at(k);
    if (i <= m) return (*inner)[static_cast<std::size_t>(i - 1)].term(n);
    return outer_shared->term(i - m);
  };
  auto bound = [inner, plan, outer_shared, m](std::int64_t k) {
    auto [c, o] = plan->counts(k);
    Rational b(0);
    for (std::int64_t i = 0; i < m; ++i)
      b += (*inner)[static_cast<std::size_t>(i)].bound(c[static_cast<std::size_t>(i)]);
    if (outer_shared) b += outer_shared->bound(o);
    return b;
  };
  SeriesFunction::PointwiseFn pw;
  if (all_pointwise) {
    pw = [inner, plan, outer_shared, m](std::int64_t k,
                                        const EvalPoint& x) -> std::optional<PointwiseTail> {
      auto [c, o] = plan->counts(k);
      Rational b(0);
      for (std::int64_t i = 0; i < m; ++i) {
        auto t = (*inner)[static_cast<std::size_t>(i)].pointwise_tail(
            c[static_cast<std::size_t>(i)], x);
        if (!t) return std::nullopt;
        if (t->kind == PointwiseTail::Kind::Divergent) return t;
        b += t->bound;
      }
      if (outer_shared) {
        auto t = outer_shared->pointwise(o, x);
        if (!t) return std::nullopt;
        if (t->kind == PointwiseTail::Kind::Divergent) return t;
        b += t->bound;
      }
      return PointwiseTail::of(std::move(b));
    };
  }
  return SeriesFunction::with_tail(std::move(space), {}, std::move(gen), std::move(bound),
                                   std::move(pw));
}

EvalResult eval_enclosure(const SeriesFunction& f, const EvalPoint& x, const Rational& eps,
                          std::int64_t budget) {
  if (eps <= 0) throw std::invalid_argument("eval_enclosure: eps must be positive");
  if (f.zero_tail()) {
    Rational v(0);
    for (std::int64_t n = 1; n <= f.prefix_len(); ++n) v += elem_eval(f.term(n), x);
    return EvalResult::exact(std::move(v));
  }
  if (!f.has_pointwise()) return EvalResult::unknown();

  auto first = f.pointwise_tail(0, x);
  if (!first) return EvalResult::unknown();
  if (first->kind == PointwiseTail::Kind::Divergent)
    return EvalResult::exact(Rational(0));  // absolute divergence: value 0 by convention

  // Smallest k within budget whose pointwise tail bound is <= eps.
  std::int64_t k = -1;
  if (first->bound <= eps) k = 0;
  for (std::int64_t probe = 1; k < 0 && probe <= budget; probe *= 2) {
    auto t = f.pointwise_tail(probe, x);
    if (!t) return EvalResult::unknown();
    if (t->kind == PointwiseTail::Kind::Divergent) return EvalResult::exact(Rational(0));
    if (t->bound <= eps) {
      std::int64_t lo = probe / 2 + 1, hi = probe;
      while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        auto tm = f.pointwise_tail(mid, x);
        if (tm && tm->kind == PointwiseTail::Kind::Bound && tm->bound <= eps)
          hi = mid;
        else
          lo = mid + 1;
      }
      k = lo;
    }
  }
  if (k < 0) return EvalResult::unknown();

  Rational sum(0);
  for (std::int64_t n = 1; n <= k; ++n) sum += elem_eval(f.term(n), x);
  const Rational b = f.pointwise_tail(k, x)->bound;
  if (b == 0) return EvalResult::exact(std::move(sum));
  return EvalResult::enclosed(Enclosure{sum - b, sum + b});
}

NullCertificate is_null_certified(const SeriesFunction& f, const Rational& eps,
                                  std::int64_t budget) {
  if (eps <= 0) throw std::invalid_argument("is_null_certified: eps must be positive");
  NullCertificate cert;
  std::int64_t k =
      f.bound(budget) <= eps ? min_refinement(f, eps, budget, "is_null_certified") : budget;
  Elem s = partial_sum_elem(f, k);
  for (;; ++k) {
    const Rational v = elem_abs_integral(s);
    const Rational b = f.bound(k);
    cert.norm = Enclosure{std::max(Rational(0), Rational(v - b)), v + b};
    cert.terms_used = k;
    if (cert.norm.hi <= eps) {
      cert.certified = true;
      return cert;
    }
    if (cert.norm.lo > eps) {
      cert.definitely_not = true;
      return cert;
    }
    if (k >= budget) return cert;
    s = elem_add(s, f.term(k + 1));
  }
}

NullCertificate equal_ae_certified(const SeriesFunction& f, const SeriesFunction& g,
                                   const Rational& eps, std::int64_t budget) {
  require_same_space(f, g);
  return is_null_certified(series_add(f, series_scale(g, Rational(-1))), eps, budget);
}

}  // namespace daniell
