#include "daniell/spaces.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace daniell {

SeqFunction SeqFunction::from_terms(std::vector<std::pair<std::int64_t, Rational>> terms) {
  std::map<std::int64_t, Rational> acc;
  for (auto& [idx, v] : terms) {
    if (idx < 1) throw std::invalid_argument("sequence function: index must be >= 1");
    acc[idx] += v;
  }
  SeqFunction f;
  for (auto& [idx, v] : acc)
    if (v != 0) f.terms_.emplace_back(idx, std::move(v));
  return f;
}

Rational SeqFunction::at(std::int64_t index) const {
  for (const auto& [idx, v] : terms_)
    if (idx == index) return v;
  return Rational(0);
}

Rational seq_integral(const SeqFunction& f) {
  Rational total(0);
  for (const auto& [idx, v] : f.terms()) total += v;
  return total;
}

Rational finite_space_integral(const FiniteElem& f) {
  if (f.values.size() != f.weights->size())
    throw std::invalid_argument("finite element: value/weight size mismatch");
  Rational total(0);
  for (std::size_t j = 0; j < f.values.size(); ++j) total += f.values[j] * (*f.weights)[j];
  return total;
}

SpaceDesc SpaceDesc::boxes(int dim) {
  if (dim < 1) throw std::invalid_argument("space boxes: dimension must be >= 1");
  SpaceDesc s;
  s.kind_ = Kind::Boxes;
  s.dim_ = dim;
  return s;
}

SpaceDesc SpaceDesc::counting() {
  SpaceDesc s;
  s.kind_ = Kind::Counting;
  return s;
}

SpaceDesc SpaceDesc::finite(std::vector<Rational> weights) {
  if (weights.empty()) throw std::invalid_argument("space finite: needs at least one atom");
  for (const auto& w : weights)
    if (w < 0) throw std::invalid_argument("space finite: weights must be >= 0");
  SpaceDesc s;
  s.kind_ = Kind::Finite;
  s.weights_ = std::make_shared<const std::vector<Rational>>(std::move(weights));
  return s;
}

SpaceDesc SpaceDesc::parse(const std::string& selector) {
  if (selector == "counting") return counting();
  if (selector.rfind("boxes:", 0) == 0) {
    const std::string rest = selector.substr(6);
    std::size_t pos = 0;
    int dim = 0;
    try {
      dim = std::stoi(rest, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad space selector: \"" + selector + "\"");
    }
    if (pos != rest.size() || dim < 1)
      throw std::invalid_argument("bad space selector: \"" + selector + "\"");
    return boxes(dim);
  }
  if (selector.rfind("finite:", 0) == 0) {
    std::vector<Rational> weights;
    std::stringstream ss(selector.substr(7));
    std::string tok;
    while (std::getline(ss, tok, ',')) weights.push_back(rat_parse(tok));
    return finite(std::move(weights));
  }
  throw std::invalid_argument("unknown space selector: \"" + selector + "\"");
}

std::string SpaceDesc::id() const {
  switch (kind_) {
    case Kind::Boxes: return "boxes:" + std::to_string(dim_);
    case Kind::Counting: return "counting";
    case Kind::Finite: {
      std::string s = "finite:";
      for (std::size_t j = 0; j < weights_->size(); ++j) {
        if (j) s += ',';
        s += rat_str((*weights_)[j]);
      }
      return s;
    }
  }
  return "?";
}

Elem SpaceDesc::zero() const {
  switch (kind_) {
    case Kind::Boxes: return SimpleFunction(dim_);
    case Kind::Counting: return SeqFunction();
    case Kind::Finite:
      return FiniteElem{weights_, std::vector<Rational>(weights_->size(), Rational(0))};
  }
  throw std::logic_error("unreachable");
}

bool SpaceDesc::compatible(const Elem& e) const {
  switch (kind_) {
    case Kind::Boxes: {
      const auto* f = std::get_if<SimpleFunction>(&e);
      return f && f->dim() == dim_;
    }
    case Kind::Counting: return std::holds_alternative<SeqFunction>(e);
    case Kind::Finite: {
      const auto* f = std::get_if<FiniteElem>(&e);
      return f && *f->weights == *weights_;
    }
  }
  return false;
}

bool SpaceDesc::operator==(const SpaceDesc& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Boxes: return dim_ == o.dim_;
    case Kind::Counting: return true;
    case Kind::Finite: return *weights_ == *o.weights_;
  }
  return false;
}

namespace {

[[noreturn]] void space_mismatch() { throw std::invalid_argument("space mismatch"); }

void require_same_weights(const FiniteElem& a, const FiniteElem& b) {
  if (*a.weights != *b.weights || a.values.size() != b.values.size()) space_mismatch();
}

template <class F>
SeqFunction seq_pointwise(const SeqFunction& a, const SeqFunction& b, F op) {
  std::map<std::int64_t, Rational> merged;
  for (const auto& [i, v] : a.terms()) merged[i] = Rational(0);
  for (const auto& [i, v] : b.terms()) merged[i] = Rational(0);
  std::vector<std::pair<std::int64_t, Rational>> out;
  for (auto& [i, unused] : merged) out.emplace_back(i, op(a.at(i), b.at(i)));
  return SeqFunction::from_terms(std::move(out));
}

}  // namespace

Elem elem_add(const Elem& a, const Elem& b) {
  if (a.index() != b.index()) space_mismatch();
  if (const auto* f = std::get_if<SimpleFunction>(&a))
    return add(*f, std::get<SimpleFunction>(b));
  if (const auto* f = std::get_if<SeqFunction>(&a))
    return seq_pointwise(*f, std::get<SeqFunction>(b),
                         [](const Rational& x, const Rational& y) { return x + y; });
  const auto& f = std::get<FiniteElem>(a);
  const auto& g = std::get<FiniteElem>(b);
  require_same_weights(f, g);
  FiniteElem out = f;
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += g.values[j];
  return out;
}

Elem elem_scale(const Elem& a, const Rational& lambda) {
  if (const auto* f = std::get_if<SimpleFunction>(&a)) return scale(*f, lambda);
  if (const auto* f = std::get_if<SeqFunction>(&a)) {
    std::vector<std::pair<std::int64_t, Rational>> terms = f->terms();
    for (auto& [i, v] : terms) v *= lambda;
    return SeqFunction::from_terms(std::move(terms));
  }
  FiniteElem out = std::get<FiniteElem>(a);
  for (auto& v : out.values) v *= lambda;
  return out;
}

Elem elem_max(const Elem& a, const Elem& b) {
  if (a.index() != b.index()) space_mismatch();
  if (const auto* f = std::get_if<SimpleFunction>(&a))
    return combine(*f, std::get<SimpleFunction>(b), CombineOp::Max);
  if (const auto* f = std::get_if<SeqFunction>(&a))
    return seq_pointwise(*f, std::get<SeqFunction>(b),
                         [](const Rational& x, const Rational& y) { return std::max(x, y); });
  const auto& f = std::get<FiniteElem>(a);
  const auto& g = std::get<FiniteElem>(b);
  require_same_weights(f, g);
  FiniteElem out = f;
  for (std::size_t j = 0; j < out.values.size(); ++j)
    out.values[j] = std::max(out.values[j], g.values[j]);
  return out;
}

Elem elem_min(const Elem& a, const Elem& b) {
  if (a.index() != b.index()) space_mismatch();
  if (const auto* f = std::get_if<SimpleFunction>(&a))
    return combine(*f, std::get<SimpleFunction>(b), CombineOp::Min);
  if (const auto* f = std::get_if<SeqFunction>(&a))
    return seq_pointwise(*f, std::get<SeqFunction>(b),
                         [](const Rational& x, const Rational& y) { return std::min(x, y); });
  const auto& f = std::get<FiniteElem>(a);
  const auto& g = std::get<FiniteElem>(b);
  require_same_weights(f, g);
  FiniteElem out = f;
  for (std::size_t j = 0; j < out.values.size(); ++j)
    out.values[j] = std::min(out.values[j], g.values[j]);
  return out;
}

Elem elem_abs(const Elem& a) {
  if (const auto* f = std::get_if<SimpleFunction>(&a)) return absolute(*f);
  if (const auto* f = std::get_if<SeqFunction>(&a)) {
    std::vector<std::pair<std::int64_t, Rational>> terms = f->terms();
    for (auto& [i, v] : terms) v = rat_abs(v);
    return SeqFunction::from_terms(std::move(terms));
  }
  FiniteElem out = std::get<FiniteElem>(a);
  for (auto& v : out.values) v = rat_abs(v);
  return out;
}

Rational elem_integral(const Elem& a) {
  if (const auto* f = std::get_if<SimpleFunction>(&a)) return integral_simple(*f);
  if (const auto* f = std::get_if<SeqFunction>(&a)) return seq_integral(*f);
  return finite_space_integral(std::get<FiniteElem>(a));
}

Rational elem_abs_integral(const Elem& a) { return elem_integral(elem_abs(a)); }

bool elem_equal_ae(const Elem& a, const Elem& b) {
  return elem_abs_integral(elem_add(a, elem_scale(b, Rational(-1)))) == 0;
}

bool elem_is_zero(const Elem& a) {
  if (const auto* f = std::get_if<SimpleFunction>(&a)) return f->is_zero();
  if (const auto* f = std::get_if<SeqFunction>(&a)) return f->is_zero();
  const auto& f = std::get<FiniteElem>(a);
  return std::all_of(f.values.begin(), f.values.end(),
                     [](const Rational& v) { return v == 0; });
}

Rational elem_eval(const Elem& a, const EvalPoint& x) {
  if (const auto* f = std::get_if<SimpleFunction>(&a)) {
    const auto* p = std::get_if<Point>(&x);
    if (!p) throw std::invalid_argument("eval: box space expects a point");
    return evaluate(*f, *p);
  }
  const auto* idx = std::get_if<std::int64_t>(&x);
  if (!idx) throw std::invalid_argument("eval: this space expects an index");
  if (const auto* f = std::get_if<SeqFunction>(&a)) return f->at(*idx);
  const auto& f = std::get<FiniteElem>(a);
  if (*idx < 1 || *idx > static_cast<std::int64_t>(f.values.size()))
    throw std::invalid_argument("eval: atom index out of range");
  return f.values[static_cast<std::size_t>(*idx - 1)];
}

Elem elem_min_const(const Elem& a, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("elem_min_const: constant must be positive");
  if (const auto* f = std::get_if<SimpleFunction>(&a)) return min_with_constant(*f, c);
  if (const auto* f = std::get_if<SeqFunction>(&a)) {
    // Off-support values are 0 and min(0, c) = 0, so clipping the stored
    // values is the whole pointwise minimum.
    std::vector<std::pair<std::int64_t, Rational>> terms = f->terms();
    for (auto& [i, v] : terms) v = std::min(v, c);
    return SeqFunction::from_terms(std::move(terms));
  }
  FiniteElem out = std::get<FiniteElem>(a);
  for (auto& v : out.values) v = std::min(v, c);
  return out;
}

namespace {

Box random_box(Rng& rng, int dim) {
  std::vector<Rational> lo, hi;
  for (int k = 0; k < dim; ++k) {
    Rational a = rng.rational(4, 3);
    Rational w = rng.positive_rational(3, 3);
    lo.push_back(a);
    hi.push_back(a + w);
  }
  return Box(std::move(lo), std::move(hi));
}

}  // namespace

Elem random_element(Rng& rng, const SpaceDesc& space) {
  switch (space.kind()) {
    case SpaceDesc::Kind::Boxes: {
      const int max_terms = space.dim() >= 3 ? 2 : 3;
      const std::int64_t n = rng.uniform(0, max_terms);
      std::vector<SimpleFunction::Term> terms;
      for (std::int64_t i = 0; i < n; ++i)
        terms.push_back({random_box(rng, space.dim()), rng.rational(5, 4)});
      return SimpleFunction::from_terms(space.dim(), std::move(terms));
    }
    case SpaceDesc::Kind::Counting: {
      const std::int64_t n = rng.uniform(0, 4);
      std::vector<std::pair<std::int64_t, Rational>> terms;
      for (std::int64_t i = 0; i < n; ++i)
        terms.emplace_back(rng.uniform(1, 12), rng.rational(5, 4));
      return SeqFunction::from_terms(std::move(terms));
    }
    case SpaceDesc::Kind::Finite: {
      FiniteElem f{space.weights(), {}};
      for (std::size_t j = 0; j < space.weights()->size(); ++j)
        f.values.push_back(rng.rational(5, 4));
      return f;
    }
  }
  throw std::logic_error("unreachable");
}

Elem random_nonnegative_element(Rng& rng, const SpaceDesc& space) {
  return elem_abs(random_element(rng, space));
}

EvalPoint random_eval_point(Rng& rng, const SpaceDesc& space) {
  switch (space.kind()) {
    case SpaceDesc::Kind::Boxes: {
      std::vector<Rational> coords;
      for (int k = 0; k < space.dim(); ++k) coords.push_back(rng.rational(8, 4));
      return Point{std::move(coords)};
    }
    case SpaceDesc::Kind::Counting: return rng.uniform(1, 14);
    case SpaceDesc::Kind::Finite:
      return rng.uniform(1, static_cast<std::int64_t>(space.weights()->size()));
  }
  throw std::logic_error("unreachable");
}

namespace {

// Built-in decreasing-to-zero families used by the condition II section of
// the axioms probe. `integral_at` is exact; `first_below` is the closed-form
// first index with integral < t, when one is cheap to state.
struct DecreasingFamily {
  std::string name;
  std::function<Rational(std::int64_t)> integral_at;
  std::function<std::optional<std::int64_t>(const Rational&, std::int64_t)> first_below;
};

std::vector<DecreasingFamily> builtin_families(const SpaceDesc& space) {
  switch (space.kind()) {
    case SpaceDesc::Kind::Boxes: {
      DecreasingFamily shrinking{
          "shrinking_box",
          [](std::int64_t n) { return pow2(-n); },
          [](const Rational& t, std::int64_t budget) -> std::optional<std::int64_t> {
            for (std::int64_t n = 1; n <= budget; ++n)
              if (pow2(-n) < t) return n;
            return std::nullopt;
          }};
      DecreasingFamily flattening{
          "flattening",
          [](std::int64_t n) { return Rational(1) / Rational(static_cast<long>(n)); },
          [](const Rational& t, std::int64_t budget) -> std::optional<std::int64_t> {
            if (t <= 0) return std::nullopt;
            // 1/n < t  <=>  n > 1/t; smallest such n is floor(1/t) + 1.
            const Rational inv = 1 / t;
            mpz_class floor_inv;
            mpz_fdiv_q(floor_inv.get_mpz_t(), inv.get_num().get_mpz_t(),
                       inv.get_den().get_mpz_t());
            mpz_class first = floor_inv + 1;
            if (first > budget) return std::nullopt;
            return static_cast<std::int64_t>(first.get_si());
          }};
      return {shrinking, flattening};
    }
    case SpaceDesc::Kind::Counting: {
      // Fixed finite-support function losing its lowest remaining index each
      // step; the integral hits exactly zero after the support is gone.
      DecreasingFamily zeroing{
          "counting_zeroing",
          [](std::int64_t n) {
            Rational total(0);
            for (std::int64_t i = n; i <= 4; ++i) total += rat(1, i);
            return total;
          },
          [](const Rational& t, std::int64_t budget) -> std::optional<std::int64_t> {
            for (std::int64_t n = 1; n <= std::min<std::int64_t>(budget, 6); ++n) {
              Rational total(0);
              for (std::int64_t i = n; i <= 4; ++i) total += rat(1, i);
              if (total < t) return n;
            }
            return std::nullopt;
          }};
      return {zeroing};
    }
    case SpaceDesc::Kind::Finite: {
      const Rational total_weight = [&] {
        Rational w(0);
        for (const auto& x : *space.weights()) w += x;
        return w;
      }();
      DecreasingFamily halving{
          "finite_halving",
          [total_weight](std::int64_t n) { return total_weight * pow2(-(n - 1)); },
          [total_weight](const Rational& t, std::int64_t budget) -> std::optional<std::int64_t> {
            for (std::int64_t n = 1; n <= budget; ++n)
              if (total_weight * pow2(-(n - 1)) < t) return n;
            return std::nullopt;
          }};
      return {halving};
    }
  }
  return {};
}

}  // namespace

CheckReport axioms_probe(const SpaceDesc& space, std::int64_t trials, std::uint64_t seed,
                         const Rational& threshold, std::int64_t budget) {
  if (trials < 1) throw std::invalid_argument("axioms_probe: trials must be >= 1");
  CheckReport report;
  report.check = "axioms";
  report.scenario = space.id();
  report.seed = seed;
  report.eps = threshold;

  Rng rng(seed);
  const Rational half = rat(1, 2);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const Elem f = random_element(rng, space);
    const Elem g = random_element(rng, space);
    const Rational lambda = rng.rational(4, 3);
    ++report.iterations;

    // Linearity.
    if (elem_integral(elem_add(f, g)) != elem_integral(f) + elem_integral(g)) {
      report.verdict = Verdict::Fail;
      report.witness = "linearity (sum) violated at trial " + std::to_string(trial);
      return report;
    }
    if (elem_integral(elem_scale(f, lambda)) != lambda * elem_integral(f)) {
      report.verdict = Verdict::Fail;
      report.witness = "linearity (scaling) violated at trial " + std::to_string(trial);
      return report;
    }
    // Positivity on a nonnegative element.
    if (elem_integral(elem_abs(f)) < 0) {
      report.verdict = Verdict::Fail;
      report.witness = "positivity violated at trial " + std::to_string(trial);
      return report;
    }
    // |∫f| <= ∫|f|.
    if (rat_abs(elem_integral(f)) > elem_abs_integral(f)) {
      report.verdict = Verdict::Fail;
      report.witness = "|integral| bound violated at trial " + std::to_string(trial);
      return report;
    }
    // Lattice identities f∨g = (f+g+|f−g|)/2, f∧g = (f+g−|f−g|)/2.
    const Elem fg_sum = elem_add(f, g);
    const Elem fg_absdiff = elem_abs(elem_add(f, elem_scale(g, Rational(-1))));
    const Elem max_id = elem_scale(elem_add(fg_sum, fg_absdiff), half);
    const Elem min_id = elem_scale(elem_add(fg_sum, elem_scale(fg_absdiff, Rational(-1))), half);
    if (!(elem_max(f, g) == max_id) || !(elem_min(f, g) == min_id)) {
      report.verdict = Verdict::Fail;
      report.witness = "lattice identity violated at trial " + std::to_string(trial);
      return report;
    }
    // Idempotence and |f| = f ∨ (−f).
    if (!(elem_max(f, f) == f) || !(elem_abs(f) == elem_max(f, elem_scale(f, Rational(-1))))) {
      report.verdict = Verdict::Fail;
      report.witness = "lattice law violated at trial " + std::to_string(trial);
      return report;
    }
  }

  bool all_reached = true;
  for (const auto& family : builtin_families(space)) {
    auto idx = family.first_below(threshold, budget);
    if (idx) {
      report.trace.push_back("family " + family.name + ": integral " +
                             rat_str(family.integral_at(*idx)) + " < " + rat_str(threshold) +
                             " at n=" + std::to_string(*idx));
    } else {
      all_reached = false;
      report.trace.push_back("family " + family.name + ": threshold not reached within budget " +
                             std::to_string(budget) + ", best " +
                             rat_str(family.integral_at(budget)));
      report.bound = family.integral_at(budget);
    }
  }
  report.verdict = all_reached ? Verdict::Pass : Verdict::Inconclusive;
  report.detail = "laws exact on " + std::to_string(trials) + " random elements";
  return report;
}

}  // namespace daniell
