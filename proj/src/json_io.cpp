#include "daniell/json_io.hpp"

#include <fstream>

namespace daniell {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw std::invalid_argument(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad(path, std::string("missing \"") + key + "\"");
  return j.at(key);
}

Rational rat_field(const Json& j, const std::string& path) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  bad(path, "expected rational string");
}

}  // namespace

Json box_to_json(const Box& b) {
  Json arr = Json::array();
  for (int k = 0; k < b.dim(); ++k)
    arr.push_back(Json::array({rat_str(b.lower()[k]), rat_str(b.upper()[k])}));
  return arr;
}

Box box_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("box", "expected nonempty array of [lo,hi] pairs");
  std::vector<Rational> lo, hi;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& side = j.at(k);
    if (!side.is_array() || side.size() != 2)
      bad("box[" + std::to_string(k) + "]", "expected [lo,hi]");
    lo.push_back(rat_field(side.at(0), "box lower"));
    hi.push_back(rat_field(side.at(1), "box upper"));
  }
  return Box(std::move(lo), std::move(hi));
}

Json simple_to_json(const SimpleFunction& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms())
    terms.push_back(Json{{"coef", rat_str(t.coef)}, {"box", box_to_json(t.box)}});
  return Json{{"dim", f.dim()}, {"terms", std::move(terms)}};
}

SimpleFunction simple_from_json(const Json& j) {
  const int dim = field(j, "dim", "simple function").get<int>();
  std::vector<SimpleFunction::Term> terms;
  for (const auto& t : field(j, "terms", "simple function")) {
    terms.push_back({box_from_json(field(t, "box", "term")),
                     rat_field(field(t, "coef", "term"), "term coef")});
  }
  return SimpleFunction::from_terms(dim, std::move(terms));
}

Json elem_to_json(const Elem& e) {
  if (const auto* f = std::get_if<SimpleFunction>(&e)) return simple_to_json(*f);
  if (const auto* f = std::get_if<SeqFunction>(&e)) {
    Json terms = Json::array();
    for (const auto& [i, v] : f->terms())
      terms.push_back(Json{{"index", i}, {"value", rat_str(v)}});
    return Json{{"terms", std::move(terms)}};
  }
  const auto& f = std::get<FiniteElem>(e);
  Json values = Json::array();
  for (const auto& v : f.values) values.push_back(rat_str(v));
  return Json{{"values", std::move(values)}};
}

Elem elem_from_json(const SpaceDesc& space, const Json& j) {
  switch (space.kind()) {
    case SpaceDesc::Kind::Boxes: {
      // A single {"coef","box"} term or a full {"dim","terms"} object.
      if (j.contains("coef")) {
        return SimpleFunction::from_terms(
            space.dim(), {{box_from_json(field(j, "box", "term")),
                           rat_field(field(j, "coef", "term"), "term coef")}});
      }
      SimpleFunction f = simple_from_json(j);
      if (f.dim() != space.dim()) bad("element", "dimension does not match space");
      return f;
    }
    case SpaceDesc::Kind::Counting: {
      std::vector<std::pair<std::int64_t, Rational>> terms;
      for (const auto& t : field(j, "terms", "sequence element"))
        terms.emplace_back(field(t, "index", "sequence term").get<std::int64_t>(),
                           rat_field(field(t, "value", "sequence term"), "sequence value"));
      return SeqFunction::from_terms(std::move(terms));
    }
    case SpaceDesc::Kind::Finite: {
      FiniteElem f{space.weights(), {}};
      for (const auto& v : field(j, "values", "finite element"))
        f.values.push_back(rat_field(v, "finite value"));
      if (f.values.size() != space.weights()->size())
        bad("finite element", "value count does not match atom count");
      return f;
    }
  }
  throw std::logic_error("unreachable");
}

SeriesFunction series_from_json(const Json& j) {
  const SpaceDesc space =
      SpaceDesc::parse(field(j, "space", "series").get<std::string>());
  std::vector<Elem> prefix;
  if (j.contains("prefix"))
    for (const auto& t : j.at("prefix")) prefix.push_back(elem_from_json(space, t));
  if (!j.contains("tail") || j.at("tail").is_null() ||
      (j.at("tail").is_object() &&
       (!j.at("tail").contains("family") || j.at("tail").at("family") == "zero")))
    return SeriesFunction::finite(space, std::move(prefix));
  SeriesFunction tail = make_family_series(space, j.at("tail"));
  return prepend_terms(std::move(prefix), tail);
}

IntegrableSet set_from_json(const Json& j) {
  const std::string kind =
      j.contains("kind") ? j.at("kind").get<std::string>() : std::string("indicator");
  if (kind == "sigma_union")
    bad("set", "sigma_union scenarios are run via sigma_union_from_json");
  if (kind != "indicator") bad("set", "unknown kind \"" + kind + "\"");
  const SpaceDesc space = SpaceDesc::parse(field(j, "space", "set").get<std::string>());
  if (j.contains("boxes")) {
    if (space.kind() != SpaceDesc::Kind::Boxes)
      bad("set", "exact box form requires a box space");
    std::vector<Box> boxes;
    for (const auto& b : j.at("boxes")) boxes.push_back(box_from_json(b));
    return IntegrableSet::from_boxes(BoxSet::of(space.dim(), std::move(boxes)));
  }
  return IntegrableSet::from_series(series_from_json(j));
}

SigmaUnion sigma_union_from_json(const Json& j, const Rational& eps, std::int64_t budget) {
  const SpaceDesc space = SpaceDesc::parse(field(j, "space", "sigma_union").get<std::string>());
  std::vector<IntegrableSet> members;
  if (j.contains("members"))
    for (const auto& m : j.at("members")) members.push_back(set_from_json(m));
  std::optional<ElementaryTail> tail;
  if (j.contains("tail")) tail = make_outer_tail(space, j.at("tail"));
  const bool divergent = j.contains("divergent") && j.at("divergent").get<bool>();
  return sigma_union(space, members, std::move(tail), divergent, eps, budget);
}

OrderedJson enclosure_to_json(const Enclosure& e) {
  return OrderedJson{{"lo", rat_str(e.lo)}, {"hi", rat_str(e.hi)}};
}

OrderedJson eval_result_to_json(const EvalResult& r) {
  switch (r.kind) {
    case EvalResult::Kind::Exact: return OrderedJson{{"exact", rat_str(r.value)}};
    case EvalResult::Kind::Enclosed:
      return OrderedJson{{"enclosure", enclosure_to_json(r.enclosure)}};
    case EvalResult::Kind::Unknown: return OrderedJson{{"unknown", true}};
  }
  throw std::logic_error("unreachable");
}

OrderedJson measure_to_json(const MeasureValue& m) {
  if (m.infinite) return OrderedJson{{"infinite", true}};
  return OrderedJson{{"finite", enclosure_to_json(m.value)}};
}

OrderedJson report_to_json(const CheckReport& r) {
  OrderedJson j;
  j["scenario"] = r.scenario;
  j["check"] = r.check;
  j["verdict"] = verdict_str(r.verdict);
  j["bound"] = r.bound ? OrderedJson(rat_str(*r.bound)) : OrderedJson(nullptr);
  j["eps"] = r.eps ? OrderedJson(rat_str(*r.eps)) : OrderedJson(nullptr);
  j["iterations"] = r.iterations;
  j["seed"] = r.seed;
  j["witness"] = r.witness;
  j["detail"] = r.detail;
  if (!r.trace.empty()) j["trace"] = r.trace;
  return j;
}

ScenarioSpec scenario_from_json(const Json& j, const std::string& name) {
  ScenarioSpec spec;
  spec.name = name;
  spec.check = field(j, "check", "scenario " + name).get<std::string>();
  if (j.contains("space")) spec.space = j.at("space").get<std::string>();
  if (j.contains("family")) spec.family = j.at("family").get<std::string>();
  if (j.contains("params")) spec.params = j.at("params");
  if (j.contains("eps")) spec.eps = rat_field(j.at("eps"), "scenario eps");
  if (spec.eps <= 0) bad("scenario " + name, "eps must be positive");
  if (j.contains("budget")) spec.budget = j.at("budget").get<std::int64_t>();
  if (spec.budget < 1) bad("scenario " + name, "budget must be >= 1");
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

Json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open " + file.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
  return j;
}

ScenarioSpec load_scenario(const std::filesystem::path& file) {
  return scenario_from_json(load_json(file), file.stem().string());
}

}  // namespace daniell
