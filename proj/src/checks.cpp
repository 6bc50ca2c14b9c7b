#include "daniell/checks.hpp"

#include <algorithm>

namespace daniell {

namespace {

bool elem_nonneg(const Elem& e) {
  if (const auto* f = std::get_if<SimpleFunction>(&e)) return nonnegative(*f);
  if (const auto* f = std::get_if<SeqFunction>(&e)) {
    for (const auto& [i, v] : f->terms())
      if (v < 0) return false;
    return true;
  }
  const auto& f = std::get<FiniteElem>(e);
  return std::all_of(f.values.begin(), f.values.end(),
                     [](const Rational& v) { return v >= 0; });
}

CheckReport base_report(const ScenarioSpec& spec, const char* check) {
  CheckReport r;
  r.check = check;
  r.scenario = spec.name;
  r.seed = spec.seed;
  r.eps = spec.eps;
  return r;
}

// The first member of a fail witness that names a box cell, for DCT
// domination violations.
std::string box_str(const Box& b) {
  std::string s = "[";
  for (int k = 0; k < b.dim(); ++k) {
    if (k) s += " x [";
    s += rat_str(b.lower()[k]) + "," + rat_str(b.upper()[k]) + ")";
  }
  return s;
}

// Cross-check a family's closed-form integrals against materialized
// elements on the first few steps.
void verify_integral_closed_form(const SequenceFamily& fam, std::int64_t steps) {
  if (!fam.integral_of || !fam.element) return;
  for (std::int64_t n = 1; n <= steps; ++n)
    if (elem_integral(fam.element(n)) != fam.integral_of(n))
      throw std::logic_error("family " + fam.name +
                             ": closed-form integral mismatch at n=" + std::to_string(n));
}

}  // namespace

CheckReport check_condition_ii(const ScenarioSpec& spec) {
  CheckReport report = base_report(spec, "condition_ii");
  const SequenceFamily fam =
      make_sequence_family(spec.family, SpaceDesc::parse(spec.space), spec.params);
  if (!fam.nonincreasing)
    throw std::invalid_argument("family \"" + spec.family +
                                "\" is not a declared nonincreasing family");
  verify_integral_closed_form(fam, std::min<std::int64_t>(spec.budget, 32));

  Rational prev;
  for (std::int64_t n = 1; n <= spec.budget; ++n) {
    const Rational cur = fam.integral_at(n);
    report.iterations = n;
    report.bound = cur;
    if (n > 1 && cur > prev) {
      report.verdict = Verdict::Fail;
      report.witness = "integral increased at step " + std::to_string(n) + ": " +
                       rat_str(prev) + " -> " + rat_str(cur);
      return report;
    }
    if (cur < spec.eps) {
      report.verdict = Verdict::Pass;
      report.detail = "integral " + rat_str(cur) + " < " + rat_str(spec.eps) + " at n=" +
                      std::to_string(n) + ", trace exactly nonincreasing";
      return report;
    }
    prev = cur;
  }
  report.verdict = Verdict::Inconclusive;
  report.detail = "threshold not reached within budget";
  return report;
}

namespace {

// The limit of a monotone family as a series: f_1 + (f_2 - f_1) + ...; the
// telescoping tail bound is |L - ∫f_k| for k >= 1 (plus the first term's
// absolute integral at k = 0).
SeriesFunction monotone_limit_series(const SequenceFamily& fam) {
  const Rational limit = *fam.limit_integral;
  auto element = fam.element;
  auto gen = [element](std::int64_t n) -> Elem {
    if (n == 1) return element(1);
    return elem_add(element(n), elem_scale(element(n - 1), Rational(-1)));
  };
  const Rational first_abs = elem_abs_integral(fam.element(1));
  auto fam_copy = std::make_shared<SequenceFamily>(fam);
  auto bound = [fam_copy, limit, first_abs](std::int64_t k) {
    if (k == 0) return Rational(first_abs + rat_abs(fam_copy->integral_at(1) - limit));
    return rat_abs(limit - fam_copy->integral_at(k));
  };
  return SeriesFunction::with_tail(fam.space, {}, std::move(gen), std::move(bound));
}

}  // namespace

CheckReport check_mct(const ScenarioSpec& spec) {
  CheckReport report = base_report(spec, "mct");
  const SequenceFamily fam =
      make_sequence_family(spec.family, SpaceDesc::parse(spec.space), spec.params);
  if (!fam.element || !fam.bound_m || !fam.limit_integral ||
      !(fam.nondecreasing || fam.nonincreasing))
    throw std::invalid_argument("family \"" + spec.family + "\" is not a monotone family");
  const Rational m = *fam.bound_m;
  const Rational limit = *fam.limit_integral;

  const SeriesFunction series = monotone_limit_series(fam);
  EnclosureDetail enc;
  try {
    enc = integral_enclosure_detail(series, spec.eps / 2, spec.budget);
  } catch (const BudgetExceeded& e) {
    report.verdict = Verdict::Inconclusive;
    report.bound = e.achieved;
    report.detail = "limit enclosure not tightened within budget";
    return report;
  }
  report.iterations = enc.terms_used;

  // |∫f_n| <= M exactly at every materialized step; the integral trace must
  // match the declared monotonicity; elements must be pointwise monotone on
  // the early steps.
  Rational prev;
  const std::int64_t steps = std::max<std::int64_t>(enc.terms_used, 1);
  for (std::int64_t n = 1; n <= steps; ++n) {
    const Rational cur = fam.integral_at(n);
    if (rat_abs(cur) > m) {
      report.verdict = Verdict::Fail;
      report.witness = "|integral| " + rat_str(rat_abs(cur)) + " > M = " + rat_str(m) +
                       " at step " + std::to_string(n);
      return report;
    }
    if (n > 1) {
      const bool ok = fam.nondecreasing ? cur >= prev : cur <= prev;
      if (!ok) {
        report.verdict = Verdict::Fail;
        report.witness = "integral trace not monotone at step " + std::to_string(n);
        return report;
      }
    }
    prev = cur;
  }
  for (std::int64_t n = 1; n < std::min<std::int64_t>(steps, 8); ++n) {
    const Elem d = elem_add(fam.element(n + 1), elem_scale(fam.element(n), Rational(-1)));
    const bool ok = fam.nondecreasing ? elem_nonneg(d) : elem_nonneg(elem_scale(d, Rational(-1)));
    if (!ok) {
      report.verdict = Verdict::Fail;
      report.witness = "sequence not pointwise monotone between steps " + std::to_string(n) +
                       " and " + std::to_string(n + 1);
      return report;
    }
  }

  if (!(enc.enc.lo >= limit - spec.eps && enc.enc.hi <= limit + spec.eps)) {
    report.verdict = Verdict::Fail;
    report.witness = "limit enclosure [" + rat_str(enc.enc.lo) + "," + rat_str(enc.enc.hi) +
                     "] not within eps of " + rat_str(limit);
    return report;
  }
  if (enc.enc.hi > m + spec.eps || enc.enc.lo < -(m + spec.eps)) {
    report.verdict = Verdict::Fail;
    report.witness = "limit enclosure exceeds M + eps";
    return report;
  }
  report.verdict = Verdict::Pass;
  report.bound = enc.enc.width();
  report.detail = "limit enclosure [" + rat_str(enc.enc.lo) + "," + rat_str(enc.enc.hi) +
                  "] contains " + rat_str(limit) + ", |∫f_n| <= " + rat_str(m) + " exactly";
  return report;
}

CheckReport check_dct(const ScenarioSpec& spec) {
  CheckReport report = base_report(spec, "dct");
  const SequenceFamily fam =
      make_sequence_family(spec.family, SpaceDesc::parse(spec.space), spec.params);
  if (!fam.element || !fam.dominator || !fam.limit_elem)
    throw std::invalid_argument("family \"" + spec.family +
                                "\" lacks dominator or declared limit");
  const Elem& h = *fam.dominator;
  const Elem& limit = *fam.limit_elem;

  std::optional<Rational> best;
  for (std::int64_t n = 1; n <= spec.budget; ++n) {
    const Elem fn = fam.element(n);
    report.iterations = n;
    // Exact domination |f_n| <= h on canonical cells.
    const Elem slack = elem_add(h, elem_scale(elem_abs(fn), Rational(-1)));
    if (!elem_nonneg(slack)) {
      report.verdict = Verdict::Fail;
      std::string cell = "sampled region";
      if (const auto* s = std::get_if<SimpleFunction>(&slack)) {
        for (const auto& t : s->terms())
          if (t.coef < 0) {
            cell = box_str(t.box);
            break;
          }
      }
      report.witness = "domination |f_n| <= h violated at step " + std::to_string(n) +
                       " on cell " + cell;
      return report;
    }
    const Rational dist = elem_abs_integral(elem_add(fn, elem_scale(limit, Rational(-1))));
    if (fam.norm_to_limit && n <= 32 && dist != (*fam.norm_to_limit)(n))
      throw std::logic_error("family " + fam.name + ": closed-form norm mismatch at n=" +
                             std::to_string(n));
    if (!best || dist < *best) best = dist;
    report.bound = *best;
    if (dist < spec.eps) {
      report.verdict = Verdict::Pass;
      report.detail = "‖f_n - f‖ = " + rat_str(dist) + " < " + rat_str(spec.eps) +
                      " at n=" + std::to_string(n) + ", domination exact throughout";
      return report;
    }
  }
  report.verdict = Verdict::Inconclusive;
  report.detail = "norm threshold not reached within budget";
  return report;
}

CheckReport check_fatou(const ScenarioSpec& spec) {
  CheckReport report = base_report(spec, "fatou");
  const SequenceFamily fam =
      make_sequence_family(spec.family, SpaceDesc::parse(spec.space), spec.params);
  if (!fam.element || !fam.bound_m || !fam.limit_elem)
    throw std::invalid_argument("family \"" + spec.family +
                                "\" lacks a bound or declared limit");
  const Rational m = *fam.bound_m;
  const std::int64_t horizon = std::min<std::int64_t>(spec.budget, fam.horizon.value_or(200));

  for (std::int64_t n = 1; n <= horizon; ++n) {
    const Elem fn = fam.element(n);
    report.iterations = n;
    if (!elem_nonneg(fn)) {
      report.verdict = Verdict::Fail;
      report.witness = "negative value at step " + std::to_string(n);
      return report;
    }
    const Rational in = elem_integral(fn);
    if (fam.integral_of && in != fam.integral_of(n))
      throw std::logic_error("family " + fam.name + ": closed-form integral mismatch");
    if (in > m) {
      report.verdict = Verdict::Fail;
      report.witness = "∫f_n = " + rat_str(in) + " > M = " + rat_str(m) + " at step " +
                       std::to_string(n);
      return report;
    }
  }
  const Rational limit_integral = elem_integral(*fam.limit_elem);
  if (limit_integral > m + spec.eps) {
    report.verdict = Verdict::Fail;
    report.witness = "limit integral " + rat_str(limit_integral) + " > M + eps";
    return report;
  }
  report.verdict = Verdict::Pass;
  report.bound = limit_integral;
  report.detail = "∫f_n <= " + rat_str(m) + " exactly over " + std::to_string(horizon) +
                  " steps; limit integral " + rat_str(limit_integral) +
                  (limit_integral < m ? " (strict gap below M)" : " = M");
  return report;
}

CheckReport check_banach_completeness(const ScenarioSpec& spec) {
  CheckReport report = base_report(spec, "banach");
  const SeriesFunction series =
      make_banach_series(spec.family, SpaceDesc::parse(spec.space), spec.params);

  std::int64_t cap = -1;
  for (std::int64_t k = 0; k <= spec.budget; ++k) {
    if (series.bound(k) <= spec.eps) {
      cap = k;
      break;
    }
  }
  if (cap < 0) {
    report.verdict = Verdict::Inconclusive;
    report.bound = series.bound(spec.budget);
    report.detail = "tail bound not below eps within budget";
    return report;
  }
  report.iterations = cap;
  report.bound = series.bound(cap);

  // Residual norm upper bounds at matched refinement:
  // ∫|f_{k+1} + ... + f_K| + B_K <= B_k must hold exactly for every k <= K.
  std::vector<Elem> suffix(static_cast<std::size_t>(cap + 1), series.space().zero());
  for (std::int64_t k = cap - 1; k >= 0; --k)
    suffix[static_cast<std::size_t>(k)] =
        elem_add(series.term(k + 1), suffix[static_cast<std::size_t>(k + 1)]);
  const Rational bk_cap = series.bound(cap);
  for (std::int64_t k = 0; k <= cap; ++k) {
    const Rational lhs =
        elem_abs_integral(suffix[static_cast<std::size_t>(k)]) + bk_cap;
    const Rational rhs = series.bound(k);
    if (lhs > rhs) {
      report.verdict = Verdict::Fail;
      report.witness = "residual bound violated at k=" + std::to_string(k) + ": " +
                       rat_str(lhs) + " > B_k = " + rat_str(rhs);
      return report;
    }
    if (k < 16)
      report.trace.push_back("k=" + std::to_string(k) + ": ‖f - s_k‖ <= " + rat_str(lhs) +
                             " <= B_k = " + rat_str(rhs));
  }
  report.verdict = Verdict::Pass;
  report.detail = "residual bounds exact for k = 0.." + std::to_string(cap) + ", B_K = " +
                  rat_str(bk_cap) + " <= eps";
  return report;
}

SubseqResult extract_ae_subsequence(const std::function<Rational(std::int64_t)>& norm_upper,
                                    std::int64_t count, std::int64_t budget) {
  SubseqResult result;
  std::int64_t p = 0;
  for (std::int64_t n = 1; n <= count; ++n) {
    const Rational target = pow2(-n);
    bool found = false;
    while (result.scanned < budget) {
      ++p;
      ++result.scanned;
      const Rational nu = norm_upper(p);
      if (nu < target) {
        result.steps.push_back({p, nu});
        found = true;
        break;
      }
    }
    if (!found) return result;
  }
  result.complete = true;
  return result;
}

CheckReport check_subsequence(const ScenarioSpec& spec) {
  CheckReport report = base_report(spec, "subsequence");
  const SequenceFamily fam =
      make_sequence_family(spec.family, SpaceDesc::parse(spec.space), spec.params);
  if (!fam.norm_to_limit)
    throw std::invalid_argument("family \"" + spec.family + "\" lacks certified norms");
  const std::int64_t count = spec.params.contains("count")
                                 ? spec.params.at("count").get<std::int64_t>()
                                 : 10;

  const SubseqResult result = extract_ae_subsequence(*fam.norm_to_limit, count, spec.budget);
  report.iterations = result.scanned;
  for (std::size_t n = 0; n < result.steps.size(); ++n)
    report.trace.push_back("p_" + std::to_string(n + 1) + " = " +
                           std::to_string(result.steps[n].index) + ", norm " +
                           rat_str(result.steps[n].cert) + " < " +
                           rat_str(pow2(-static_cast<std::int64_t>(n + 1))));
  if (!result.complete) {
    report.verdict = Verdict::Inconclusive;
    report.detail = "found " + std::to_string(result.steps.size()) + " of " +
                    std::to_string(count) + " indices within scan budget";
    if (!result.steps.empty()) report.bound = result.steps.back().cert;
    return report;
  }
  report.verdict = Verdict::Pass;
  report.bound = result.steps.back().cert;
  report.detail = "extracted " + std::to_string(count) + " indices, all certificates strict";
  return report;
}

CheckReport run_check(const ScenarioSpec& spec) {
  if (spec.check == "condition_ii") return check_condition_ii(spec);
  if (spec.check == "mct") return check_mct(spec);
  if (spec.check == "dct") return check_dct(spec);
  if (spec.check == "fatou") return check_fatou(spec);
  if (spec.check == "banach") return check_banach_completeness(spec);
  if (spec.check == "subsequence") return check_subsequence(spec);
  if (spec.check == "axioms") {
    const std::int64_t trials = spec.params.contains("trials")
                                    ? spec.params.at("trials").get<std::int64_t>()
                                    : 500;
    CheckReport r = axioms_probe(SpaceDesc::parse(spec.space), trials, spec.seed, spec.eps,
                                 spec.budget);
    r.scenario = spec.name;
    return r;
  }
  if (spec.check == "stone") {
    const std::int64_t trials = spec.params.contains("trials")
                                    ? spec.params.at("trials").get<std::int64_t>()
                                    : 200;
    CheckReport r = stone_check(SpaceDesc::parse(spec.space), trials, spec.seed);
    r.scenario = spec.name;
    r.eps = spec.eps;
    return r;
  }
  throw std::invalid_argument("unknown check \"" + spec.check + "\"");
}

}  // namespace daniell
