#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "daniell/checks.hpp"
#include "daniell/measure.hpp"

namespace daniell {

using OrderedJson = nlohmann::ordered_json;

// Rationals serialize as exact "p/q" (or "p") strings; boxes as arrays of
// [lower, upper] pairs per coordinate.
Json box_to_json(const Box& b);
Box box_from_json(const Json& j);

Json simple_to_json(const SimpleFunction& f);
// Accepts non-canonical input ({"dim":N,"terms":[{"coef":..,"box":..}]})
// and canonicalizes on load.
SimpleFunction simple_from_json(const Json& j);

Json elem_to_json(const Elem& e);
Elem elem_from_json(const SpaceDesc& space, const Json& j);

// {"space":"boxes:1","prefix":[...],"tail":{"family":...}}
SeriesFunction series_from_json(const Json& j);

// Indicator sets: {"kind":"indicator","space":..,"boxes":[...]} (exact) or
// series fields; sigma unions: {"kind":"sigma_union","members":[...],
// "tail":{...},"divergent":bool}.
IntegrableSet set_from_json(const Json& j);

OrderedJson enclosure_to_json(const Enclosure& e);
OrderedJson eval_result_to_json(const EvalResult& r);
OrderedJson measure_to_json(const MeasureValue& m);
OrderedJson report_to_json(const CheckReport& r);

ScenarioSpec scenario_from_json(const Json& j, const std::string& name);
ScenarioSpec load_scenario(const std::filesystem::path& file);

Json load_json(const std::filesystem::path& file);

// Parses a sigma-union scenario and runs it.
SigmaUnion sigma_union_from_json(const Json& j, const Rational& eps, std::int64_t budget);

}  // namespace daniell
