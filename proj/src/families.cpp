#include "daniell/families.hpp"

#include <stdexcept>

namespace daniell {

namespace {

Rational param_rat(const Json& p, const char* key, const Rational& def) {
  if (!p.contains(key)) return def;
  const Json& v = p.at(key);
  if (v.is_string()) return rat_parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  throw std::invalid_argument(std::string("param \"") + key + "\": expected rational string");
}

std::int64_t param_int(const Json& p, const char* key, std::int64_t def) {
  if (!p.contains(key)) return def;
  const Json& v = p.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) return std::stoll(v.get<std::string>());
  throw std::invalid_argument(std::string("param \"") + key + "\": expected integer");
}

std::string param_str(const Json& p, const char* key, const std::string& def) {
  if (!p.contains(key)) return def;
  return p.at(key).get<std::string>();
}

void require_boxes(const SpaceDesc& space, const std::string& family) {
  if (space.kind() != SpaceDesc::Kind::Boxes)
    throw std::invalid_argument("family \"" + family + "\" requires a box space");
}

Box unit_box(int dim) {
  std::vector<Rational> lo(static_cast<std::size_t>(dim), Rational(0));
  std::vector<Rational> hi(static_cast<std::size_t>(dim), Rational(1));
  return Box(std::move(lo), std::move(hi));
}

// [a, b) x [0,1)^(dim-1)
Box strip_box(int dim, const Rational& a, const Rational& b) {
  std::vector<Rational> lo(static_cast<std::size_t>(dim), Rational(0));
  std::vector<Rational> hi(static_cast<std::size_t>(dim), Rational(1));
  lo[0] = a;
  hi[0] = b;
  return Box(std::move(lo), std::move(hi));
}

Box shifted_unit(int dim, std::int64_t n) {
  return strip_box(dim, Rational(static_cast<long>(n - 1)), Rational(static_cast<long>(n)));
}

mpz_class rat_floor(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

// Covering index of x under boxes [n-1, n) x [0,1)^(d-1): the n whose strip
// contains x, if any.
std::optional<std::int64_t> shift_cover_index(const Point& x) {
  for (std::size_t j = 1; j < x.coords.size(); ++j)
    if (x.coords[j] < 0 || x.coords[j] >= 1) return std::nullopt;
  if (x.coords[0] < 0) return std::nullopt;
  return static_cast<std::int64_t>(rat_floor(x.coords[0]).get_si()) + 1;
}

const Point& expect_point(const EvalPoint& x) {
  const auto* p = std::get_if<Point>(&x);
  if (!p) throw std::invalid_argument("eval: box space expects a point");
  return *p;
}

// Scalar tail of the p-series: sum_{n>k} n^-p <= 1 + 1/(p-1) for k = 0,
// else k^(1-p)/(p-1) by the integral bound.
Rational pseries_tail(std::int64_t p, std::int64_t k) {
  if (k == 0) return 1 + rat(1, p - 1);
  return rat(1, p - 1) / rat_pow(Rational(static_cast<long>(k)), p - 1);
}

SeriesFunction geometric_boxes(const SpaceDesc& space, const Json& tail) {
  const Rational ratio = param_rat(tail, "ratio", rat(1, 2));
  const Rational coef = param_rat(tail, "coef", Rational(1));
  const std::string rule = param_str(tail, "box_rule", "unit_shift");
  if (ratio == 0 || rat_abs(ratio) >= 1)
    throw std::invalid_argument("geometric_boxes: ratio must satisfy 0 < |ratio| < 1");
  if (coef == 0) throw std::invalid_argument("geometric_boxes: coef must be nonzero");
  const int dim = space.dim();
  const Rational mag = rat_abs(ratio);
  const bool shift = rule == "unit_shift";
  if (!shift && rule != "fixed_unit")
    throw std::invalid_argument("geometric_boxes: unknown box_rule \"" + rule + "\"");

  auto gen = [shift, dim, coef, ratio](std::int64_t n) -> Elem {
    const Box b = shift ? shifted_unit(dim, n) : unit_box(dim);
    return SimpleFunction::indicator(b, coef * rat_pow(ratio, n));
  };
  auto bound = [coef, mag](std::int64_t k) {
    return Rational(rat_abs(coef) * rat_pow(mag, k + 1) / (1 - mag));
  };
  SeriesFunction::PointwiseFn pw;
  if (shift) {
    pw = [coef, ratio](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      const auto n0 = shift_cover_index(expect_point(x));
      if (!n0 || *n0 <= k) return PointwiseTail::of(Rational(0));
      return PointwiseTail::of(rat_abs(coef * rat_pow(ratio, *n0)));
    };
  } else {
    pw = [coef, mag, dim](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      const Point& pt = expect_point(x);
      if (!unit_box(dim).contains(pt)) return PointwiseTail::of(Rational(0));
      return PointwiseTail::of(rat_abs(coef) * rat_pow(mag, k + 1) / (1 - mag));
    };
  }
  return SeriesFunction::with_tail(space, {}, std::move(gen), std::move(bound), std::move(pw),
                                   shift);
}

SeriesFunction pseries_boxes(const SpaceDesc& space, const Json& tail) {
  const std::int64_t p = param_int(tail, "p", 2);
  const Rational coef = param_rat(tail, "coef", Rational(1));
  const std::string rule = param_str(tail, "box_rule", "fixed_unit");
  if (p < 2) throw std::invalid_argument("pseries_boxes: p must be >= 2");
  if (coef == 0) throw std::invalid_argument("pseries_boxes: coef must be nonzero");
  const int dim = space.dim();
  const bool shift = rule == "unit_shift";
  if (!shift && rule != "fixed_unit")
    throw std::invalid_argument("pseries_boxes: unknown box_rule \"" + rule + "\"");
  const Rational mag = rat_abs(coef);

  auto gen = [shift, dim, coef, p](std::int64_t n) -> Elem {
    const Box b = shift ? shifted_unit(dim, n) : unit_box(dim);
    return SimpleFunction::indicator(b, coef / rat_pow(Rational(static_cast<long>(n)), p));
  };
  auto bound = [mag, p](std::int64_t k) { return Rational(mag * pseries_tail(p, k)); };
  SeriesFunction::PointwiseFn pw;
  if (shift) {
    pw = [mag, p](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      const auto n0 = shift_cover_index(expect_point(x));
      if (!n0 || *n0 <= k) return PointwiseTail::of(Rational(0));
      return PointwiseTail::of(mag / rat_pow(Rational(static_cast<long>(*n0)), p));
    };
  } else {
    pw = [mag, p, dim](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
      if (!unit_box(dim).contains(expect_point(x))) return PointwiseTail::of(Rational(0));
      return PointwiseTail::of(mag * pseries_tail(p, k));
    };
  }
  return SeriesFunction::with_tail(space, {}, std::move(gen), std::move(bound), std::move(pw),
                                   shift);
}

SeriesFunction indicator_shift(const SpaceDesc& space, const Json& tail) {
  const Rational r = param_rat(tail, "width_ratio", rat(1, 2));
  const Rational coef = param_rat(tail, "coef", Rational(1));
  if (r <= 0 || r >= 1)
    throw std::invalid_argument("indicator_shift: width_ratio must satisfy 0 < r < 1");
  if (coef == 0) throw std::invalid_argument("indicator_shift: coef must be nonzero");
  const int dim = space.dim();

  auto gen = [dim, r, coef](std::int64_t n) -> Elem {
    const Rational left(static_cast<long>(n - 1));
    return SimpleFunction::indicator(strip_box(dim, left, left + rat_pow(r, n)), coef);
  };
  auto bound = [r, coef](std::int64_t k) {
    return Rational(rat_abs(coef) * rat_pow(r, k + 1) / (1 - r));
  };
  auto pw = [r, coef](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
    const Point& pt = expect_point(x);
    const auto n0 = shift_cover_index(pt);
    if (!n0 || *n0 <= k) return PointwiseTail::of(Rational(0));
    const Rational offset = pt.coords[0] - Rational(static_cast<long>(*n0 - 1));
    if (offset >= rat_pow(r, *n0)) return PointwiseTail::of(Rational(0));
    return PointwiseTail::of(rat_abs(coef));
  };
  return SeriesFunction::with_tail(space, {}, std::move(gen), std::move(bound), std::move(pw),
                                   true);
}

SeriesFunction geometric_counting(const SpaceDesc& space, const Json& tail) {
  const Rational ratio = param_rat(tail, "ratio", rat(1, 2));
  const Rational coef = param_rat(tail, "coef", Rational(1));
  if (ratio == 0 || rat_abs(ratio) >= 1)
    throw std::invalid_argument("geometric_counting: ratio must satisfy 0 < |ratio| < 1");
  const Rational mag = rat_abs(ratio);

  auto gen = [coef, ratio](std::int64_t n) -> Elem {
    return SeqFunction::from_terms({{n, coef * rat_pow(ratio, n)}});
  };
  auto bound = [coef, mag](std::int64_t k) {
    return Rational(rat_abs(coef) * rat_pow(mag, k + 1) / (1 - mag));
  };
  auto pw = [coef, ratio](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
    const auto* idx = std::get_if<std::int64_t>(&x);
    if (!idx) throw std::invalid_argument("eval: counting space expects an index");
    if (*idx <= k) return PointwiseTail::of(Rational(0));
    return PointwiseTail::of(rat_abs(coef * rat_pow(ratio, *idx)));
  };
  return SeriesFunction::with_tail(space, {}, std::move(gen), std::move(bound), std::move(pw),
                                   true);
}

// f_n = n * indicator of [0, n^-3): absolutely summable in integral
// (sum n^-2), pointwise divergent exactly at the origin.
SeriesFunction spike_boxes(const SpaceDesc& space, const Json& tail) {
  (void)tail;
  const int dim = space.dim();
  auto gen = [dim](std::int64_t n) -> Elem {
    const Rational width = 1 / rat_pow(Rational(static_cast<long>(n)), 3);
    return SimpleFunction::indicator(strip_box(dim, Rational(0), width),
                                     Rational(static_cast<long>(n)));
  };
  auto bound = [](std::int64_t k) { return Rational(pseries_tail(2, k)); };
  auto pw = [dim](std::int64_t k, const EvalPoint& x) -> std::optional<PointwiseTail> {
    const Point& pt = expect_point(x);
    for (std::size_t j = 1; j < pt.coords.size(); ++j)
      if (pt.coords[j] < 0 || pt.coords[j] >= 1) return PointwiseTail::of(Rational(0));
    const Rational& x0 = pt.coords[0];
    if (x0 < 0 || x0 >= 1) return PointwiseTail::of(Rational(0));
    if (x0 == 0) return PointwiseTail::divergent();
    // Terms with n^-3 > x0, i.e. n^3 <= (den-1)/num after clearing: the
    // largest such n is the floor cube root.
    mpz_class limit;
    mpz_fdiv_q(limit.get_mpz_t(), mpz_class(x0.get_den() - 1).get_mpz_t(),
               x0.get_num().get_mpz_t());
    if (limit <= 0) return PointwiseTail::of(Rational(0));
    mpz_class nmax;
    mpz_root(nmax.get_mpz_t(), limit.get_mpz_t(), 3);
    const std::int64_t n_max = static_cast<std::int64_t>(nmax.get_si());
    if (n_max <= k) return PointwiseTail::of(Rational(0));
    // sum of integers in (k, n_max]
    const Rational total =
        rat(n_max, 1) * rat(n_max + 1, 1) / 2 - rat(k, 1) * rat(k + 1, 1) / 2;
    return PointwiseTail::of(total);
  };
  return SeriesFunction::with_tail(space, {}, std::move(gen), std::move(bound), std::move(pw),
                                   false);
}

}  // namespace

SeriesFunction make_family_series(const SpaceDesc& space, const Json& tail) {
  const std::string family = param_str(tail, "family", "zero");
  if (family == "zero") return SeriesFunction::finite(space, {});
  if (family == "geometric_boxes") {
    require_boxes(space, family);
    return geometric_boxes(space, tail);
  }
  if (family == "pseries_boxes") {
    require_boxes(space, family);
    return pseries_boxes(space, tail);
  }
  if (family == "indicator_shift") {
    require_boxes(space, family);
    return indicator_shift(space, tail);
  }
  if (family == "spike_boxes") {
    require_boxes(space, family);
    return spike_boxes(space, tail);
  }
  if (family == "geometric_counting") {
    if (space.kind() != SpaceDesc::Kind::Counting)
      throw std::invalid_argument("geometric_counting requires the counting space");
    return geometric_counting(space, tail);
  }
  throw std::invalid_argument("unknown family \"" + family + "\"");
}

SeriesFunction make_banach_series(const std::string& name, const SpaceDesc& space,
                                  const Json& params) {
  if (name == "banach_alternating_geometric") {
    require_boxes(space, name);
    Json tail = params;
    tail["family"] = "geometric_boxes";
    if (!tail.contains("ratio")) tail["ratio"] = "-1/2";
    if (!tail.contains("box_rule")) tail["box_rule"] = "fixed_unit";
    return make_family_series(space, tail);
  }
  if (name == "banach_finite") {
    require_boxes(space, name);
    const int dim = space.dim();
    std::vector<Elem> terms;
    terms.push_back(SimpleFunction::indicator(unit_box(dim), Rational(1)));
    terms.push_back(SimpleFunction::indicator(unit_box(dim), rat(-1, 2)));
    terms.push_back(SimpleFunction::indicator(strip_box(dim, Rational(0), Rational(2)), rat(1, 4)));
    return SeriesFunction::finite(space, std::move(terms));
  }
  if (name == "banach_bad_bound") {
    require_boxes(space, name);
    Json tail = params;
    tail["family"] = "geometric_boxes";
    if (!tail.contains("ratio")) tail["ratio"] = "-1/2";
    if (!tail.contains("box_rule")) tail["box_rule"] = "fixed_unit";
    SeriesFunction good = make_family_series(space, tail);
    // Deliberately understated tail bounds: the completeness check must
    // detect the violated residual inequality and fail.
    auto gen = [good](std::int64_t n) { return good.term(n); };
    auto bound = [good](std::int64_t k) { return Rational(good.bound(k) / 4); };
    return SeriesFunction::with_tail(space, {}, std::move(gen), std::move(bound));
  }
  throw std::invalid_argument("unknown family \"" + name + "\"");
}

std::optional<ElementaryTail> make_outer_tail(const SpaceDesc& space, const Json& tail) {
  if (tail.is_null()) return std::nullopt;
  const std::string family = param_str(tail, "family", "zero");
  if (family == "zero") return std::nullopt;
  const std::int64_t offset = param_int(tail, "offset", 0);
  Json inner = tail;
  inner.erase("offset");
  SeriesFunction base = make_family_series(space, inner);
  ElementaryTail out;
  out.term = [base, offset](std::int64_t i) { return base.term(offset + i); };
  out.bound = [base, offset](std::int64_t j) { return base.bound(offset + j); };
  if (base.has_pointwise()) {
    out.pointwise = [base, offset](std::int64_t j, const EvalPoint& x) {
      return base.pointwise_tail(offset + j, x);
    };
  }
  return out;
}

SequenceFamily make_sequence_family(const std::string& name, const SpaceDesc& space,
                                    const Json& params) {
  SequenceFamily fam;
  fam.name = name;
  fam.space = space;

  if (name == "shrinking_box") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(strip_box(dim, Rational(0), pow2(-n)));
    };
    fam.integral_of = [](std::int64_t n) { return pow2(-n); };
    fam.nonincreasing = true;
    fam.limit_integral = Rational(0);
    return fam;
  }
  if (name == "flattening") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(unit_box(dim), rat(1, n));
    };
    fam.integral_of = [](std::int64_t n) { return rat(1, n); };
    fam.nonincreasing = true;
    fam.limit_integral = Rational(0);
    return fam;
  }
  if (name == "counting_zeroing") {
    if (space.kind() != SpaceDesc::Kind::Counting)
      throw std::invalid_argument("counting_zeroing requires the counting space");
    const std::int64_t support = param_int(params, "support", 4);
    fam.element = [support](std::int64_t n) -> Elem {
      std::vector<std::pair<std::int64_t, Rational>> terms;
      for (std::int64_t i = n; i <= support; ++i) terms.emplace_back(i, rat(1, i));
      return SeqFunction::from_terms(std::move(terms));
    };
    fam.integral_of = [support](std::int64_t n) {
      Rational total(0);
      for (std::int64_t i = n; i <= support; ++i) total += rat(1, i);
      return total;
    };
    fam.nonincreasing = true;
    fam.limit_integral = Rational(0);
    fam.horizon = support + 1;
    return fam;
  }
  if (name == "finite_halving") {
    if (space.kind() != SpaceDesc::Kind::Finite)
      throw std::invalid_argument("finite_halving requires a finite space");
    Rational total(0);
    for (const auto& w : *space.weights()) total += w;
    fam.element = [space](std::int64_t n) -> Elem {
      FiniteElem f{space.weights(),
                   std::vector<Rational>(space.weights()->size(), pow2(-(n - 1)))};
      return f;
    };
    fam.integral_of = [total](std::int64_t n) { return Rational(total * pow2(-(n - 1))); };
    fam.nonincreasing = true;
    fam.limit_integral = Rational(0);
    return fam;
  }
  if (name == "corrupted_increase") {
    require_boxes(space, name);
    const int dim = space.dim();
    // Claims to be nonincreasing but jumps at step 3: the checks must fail
    // with that step as witness.
    fam.element = [dim](std::int64_t n) -> Elem {
      const Rational width = n == 3 ? Rational(1) : pow2(-n);
      return SimpleFunction::indicator(strip_box(dim, Rational(0), width));
    };
    fam.integral_of = [](std::int64_t n) { return n == 3 ? Rational(1) : pow2(-n); };
    fam.nonincreasing = true;
    fam.limit_integral = Rational(0);
    return fam;
  }

  if (name == "mct_cumulative_geometric") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      std::vector<SimpleFunction::Term> terms;
      for (std::int64_t k = 1; k <= n; ++k)
        terms.push_back({shifted_unit(dim, k), pow2(-k)});
      return SimpleFunction::from_terms(dim, std::move(terms));
    };
    fam.integral_of = [](std::int64_t n) { return Rational(1 - pow2(-n)); };
    fam.nondecreasing = true;
    fam.limit_integral = Rational(1);
    fam.bound_m = param_rat(params, "bound", Rational(1));
    return fam;
  }
  if (name == "mct_constant") {
    require_boxes(space, name);
    const int dim = space.dim();
    const Rational c = param_rat(params, "coef", Rational(2));
    fam.element = [dim, c](std::int64_t) -> Elem {
      return SimpleFunction::indicator(unit_box(dim), c);
    };
    fam.integral_of = [c](std::int64_t) { return c; };
    fam.nondecreasing = fam.nonincreasing = true;
    fam.limit_integral = c;
    fam.bound_m = param_rat(params, "bound", rat_abs(c));
    return fam;
  }
  if (name == "mct_decreasing_geometric") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(unit_box(dim), pow2(-n));
    };
    fam.integral_of = [](std::int64_t n) { return pow2(-n); };
    fam.nonincreasing = true;
    fam.limit_integral = Rational(0);
    fam.bound_m = param_rat(params, "bound", rat(1, 2));
    return fam;
  }
  if (name == "mct_bound_fault") {
    SequenceFamily base = make_sequence_family("mct_cumulative_geometric", space, params);
    base.name = name;
    base.bound_m = param_rat(params, "bound", rat(1, 2));  // violated from step 2 on
    return base;
  }

  if (name == "dct_shrink_left") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(strip_box(dim, rat(1, n), Rational(1)));
    };
    fam.dominator = SimpleFunction::indicator(unit_box(dim));
    fam.limit_elem = SimpleFunction::indicator(unit_box(dim));
    fam.norm_to_limit = [](std::int64_t n) { return rat(1, n); };
    return fam;
  }
  if (name == "dct_constant") {
    require_boxes(space, name);
    const int dim = space.dim();
    const Rational c = param_rat(params, "coef", rat(3, 2));
    const Elem f = SimpleFunction::indicator(unit_box(dim), c);
    fam.element = [f](std::int64_t) { return f; };
    fam.dominator = elem_abs(f);
    fam.limit_elem = f;
    fam.norm_to_limit = [](std::int64_t) { return Rational(0); };
    return fam;
  }
  if (name == "dct_geometric") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(unit_box(dim), Rational(1 - pow2(-n)));
    };
    fam.dominator = SimpleFunction::indicator(unit_box(dim));
    fam.limit_elem = SimpleFunction::indicator(unit_box(dim));
    fam.norm_to_limit = [](std::int64_t n) { return pow2(-n); };
    return fam;
  }
  if (name == "dct_domination_fault") {
    require_boxes(space, name);
    const int dim = space.dim();
    // (1/n) on [0, n) escapes the declared dominator on [1, n).
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(
          strip_box(dim, Rational(0), Rational(static_cast<long>(n))), rat(1, n));
    };
    fam.dominator = SimpleFunction::indicator(unit_box(dim));
    fam.limit_elem = SimpleFunction(dim);
    return fam;
  }

  if (name == "fatou_escape") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(shifted_unit(dim, n + 1));
    };
    fam.integral_of = [](std::int64_t) { return Rational(1); };
    fam.bound_m = param_rat(params, "bound", Rational(1));
    fam.limit_elem = SimpleFunction(dim);
    fam.horizon = param_int(params, "steps", 200);
    return fam;
  }
  if (name == "fatou_constant") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t) -> Elem {
      return SimpleFunction::indicator(unit_box(dim));
    };
    fam.integral_of = [](std::int64_t) { return Rational(1); };
    fam.bound_m = param_rat(params, "bound", Rational(1));
    fam.limit_elem = SimpleFunction::indicator(unit_box(dim));
    fam.horizon = param_int(params, "steps", 200);
    return fam;
  }
  if (name == "fatou_spike") {
    require_boxes(space, name);
    const int dim = space.dim();
    fam.element = [dim](std::int64_t n) -> Elem {
      return SimpleFunction::indicator(strip_box(dim, Rational(0), rat(1, n)),
                                       Rational(static_cast<long>(n)));
    };
    fam.integral_of = [](std::int64_t) { return Rational(1); };
    fam.bound_m = param_rat(params, "bound", Rational(1));
    fam.limit_elem = SimpleFunction(dim);
    fam.horizon = param_int(params, "steps", 200);
    return fam;
  }
  if (name == "fatou_bound_fault") {
    SequenceFamily base = make_sequence_family("fatou_constant", space, params);
    base.name = name;
    const int dim = space.dim();
    auto inner = base.element;
    base.element = [inner, dim](std::int64_t n) -> Elem {
      if (n == 3) return SimpleFunction::indicator(unit_box(dim), Rational(2));
      return inner(n);
    };
    base.integral_of = [](std::int64_t n) { return Rational(n == 3 ? 2 : 1); };
    return base;
  }
  if (name == "fatou_negative_fault") {
    SequenceFamily base = make_sequence_family("fatou_constant", space, params);
    base.name = name;
    const int dim = space.dim();
    auto inner = base.element;
    base.element = [inner, dim](std::int64_t n) -> Elem {
      if (n == 2) return SimpleFunction::indicator(unit_box(dim), Rational(-1));
      return inner(n);
    };
    base.integral_of = [](std::int64_t n) { return Rational(n == 2 ? -1 : 1); };
    return base;
  }

  if (name == "subseq_harmonic") {
    fam.norm_to_limit = [](std::int64_t n) { return rat(1, n); };
    return fam;
  }
  if (name == "subseq_power3") {
    fam.norm_to_limit = [](std::int64_t n) { return Rational(1) / rat_pow(Rational(3), n); };
    return fam;
  }
  if (name == "subseq_zero") {
    fam.norm_to_limit = [](std::int64_t) { return Rational(0); };
    return fam;
  }

  throw std::invalid_argument("unknown family \"" + name + "\"");
}

}  // namespace daniell
