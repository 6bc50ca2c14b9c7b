// Command-line front end: enclosure queries on series and sets, dyadic
// decomposition, and the scenario-driven check runner.

#include <algorithm>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "daniell/json_io.hpp"

namespace fs = std::filesystem;
using namespace daniell;

namespace {

struct CommonOpts {
  std::string eps = "1/1048576";  // 2^-20
  std::int64_t budget = 10000;
  std::uint64_t seed = 0;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--eps", opts.eps, "tolerance as an exact rational, e.g. 1/1024");
  cmd->add_option("--budget", opts.budget, "refinement step budget");
  cmd->add_option("--seed", opts.seed, "random seed for randomized checks");
  cmd->add_flag("--json", opts.json, "machine-readable output");
}

int exit_code_for(const std::vector<CheckReport>& reports) {
  bool any_fail = false, any_inconclusive = false;
  for (const auto& r : reports) {
    any_fail = any_fail || r.verdict == Verdict::Fail;
    any_inconclusive = any_inconclusive || r.verdict == Verdict::Inconclusive;
  }
  if (any_fail) return 1;
  if (any_inconclusive) return 2;
  return 0;
}

// Applies command-line overrides on top of the scenario file.
ScenarioSpec load_with_overrides(const fs::path& file, const CommonOpts& opts,
                                 const CLI::App* cmd) {
  ScenarioSpec spec = load_scenario(file);
  if (cmd->count("--eps")) spec.eps = rat_parse(opts.eps);
  if (cmd->count("--budget")) spec.budget = opts.budget;
  if (cmd->count("--seed")) spec.seed = opts.seed;
  return spec;
}

EvalPoint parse_eval_point(const SpaceDesc& space, const std::string& text) {
  if (space.kind() == SpaceDesc::Kind::Boxes) {
    std::vector<Rational> coords;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(rat_parse(tok));
    if (static_cast<int>(coords.size()) != space.dim())
      throw std::invalid_argument("--at: expected " + std::to_string(space.dim()) +
                                  " comma-separated rationals");
    return Point{std::move(coords)};
  }
  return static_cast<std::int64_t>(std::stoll(text));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Daniell-integral toolkit: certified rational enclosures for "
               "series-represented functions, measures, and convergence checks"};
  app.require_subcommand(1);

  std::string series_file, set_file, function_file, scenario_file, suite_dir, at_text;
  std::int64_t level = 1;
  CommonOpts integrate_opts, norm_opts, eval_opts, measure_opts, check_opts, suite_opts;

  auto* integrate = app.add_subcommand("integrate", "integral enclosure of a series");
  integrate->add_option("--series", series_file, "series JSON file")->required();
  add_common(integrate, integrate_opts);

  auto* norm = app.add_subcommand("norm", "norm enclosure of a series");
  norm->add_option("--series", series_file, "series JSON file")->required();
  add_common(norm, norm_opts);

  auto* eval = app.add_subcommand("eval", "pointwise evaluation of a series");
  eval->add_option("--series", series_file, "series JSON file")->required();
  eval->add_option("--at", at_text, "point: comma-separated rationals, or an index")
      ->required();
  add_common(eval, eval_opts);

  auto* measure_cmd = app.add_subcommand("measure", "measure of an integrable set");
  measure_cmd->add_option("--set", set_file, "set JSON file")->required();
  add_common(measure_cmd, measure_opts);

  auto* decompose = app.add_subcommand("decompose", "dyadic level-set staircase under f");
  decompose->add_option("--function", function_file, "simple function JSON file")->required();
  decompose->add_option("--level", level, "dyadic level (buckets = 2^level)")->required();

  auto* check = app.add_subcommand("check", "run one scenario");
  check->add_option("--scenario", scenario_file, "scenario JSON file")->required();
  add_common(check, check_opts);

  auto* suite = app.add_subcommand("suite", "run every scenario *.json in a directory");
  suite->add_option("--dir", suite_dir, "scenario directory")->required();
  add_common(suite, suite_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (integrate->parsed()) {
      const SeriesFunction f = series_from_json(load_json(series_file));
      const Enclosure e =
          integral_enclosure(f, rat_parse(integrate_opts.eps), integrate_opts.budget);
      std::cout << enclosure_to_json(e).dump() << "\n";
      return 0;
    }
    if (norm->parsed()) {
      const SeriesFunction f = series_from_json(load_json(series_file));
      const Enclosure e = norm_enclosure(f, rat_parse(norm_opts.eps), norm_opts.budget);
      std::cout << enclosure_to_json(e).dump() << "\n";
      return 0;
    }
    if (eval->parsed()) {
      const SeriesFunction f = series_from_json(load_json(series_file));
      const EvalPoint x = parse_eval_point(f.space(), at_text);
      const EvalResult r = eval_enclosure(f, x, rat_parse(eval_opts.eps), eval_opts.budget);
      std::cout << eval_result_to_json(r).dump() << "\n";
      return 0;
    }
    if (measure_cmd->parsed()) {
      const Json j = load_json(set_file);
      const Rational eps = rat_parse(measure_opts.eps);
      MeasureValue m;
      if (j.contains("kind") && j.at("kind") == "sigma_union")
        m = sigma_union_from_json(j, eps, measure_opts.budget).measure;
      else
        m = mu_of(set_from_json(j), eps, measure_opts.budget);
      std::cout << measure_to_json(m).dump() << "\n";
      return 0;
    }
    if (decompose->parsed()) {
      const SimpleFunction f = simple_from_json(load_json(function_file));
      std::cout << simple_to_json(dyadic_decomposition(f, static_cast<int>(level))).dump()
                << "\n";
      return 0;
    }
    if (check->parsed()) {
      const ScenarioSpec spec = load_with_overrides(scenario_file, check_opts, check);
      const CheckReport report = run_check(spec);
      std::cout << report_to_json(report).dump() << "\n";
      return exit_code_for({report});
    }
    if (suite->parsed()) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(suite_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      std::vector<CheckReport> reports;
      for (const auto& file : files) {
        const ScenarioSpec spec = load_with_overrides(file, suite_opts, suite);
        reports.push_back(run_check(spec));
        std::cout << report_to_json(reports.back()).dump() << "\n";
      }
      std::cerr << reports.size() << " scenario(s), exit " << exit_code_for(reports) << "\n";
      return exit_code_for(reports);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
