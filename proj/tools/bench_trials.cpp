// Compares the serial reference and the OpenMP trial runner on the two
// batch workloads that dominate the randomized suites: box-partition
// additivity trials and simple-function law trials. Results must match
// exactly; timings are informational.

#include <chrono>
#include <iostream>

#include "daniell/box.hpp"
#include "daniell/parallel.hpp"
#include "daniell/rng.hpp"
#include "daniell/simple_function.hpp"
#include "daniell/spaces.hpp"

using namespace daniell;

namespace {

// Randomized partition of a random box: repeatedly split a part along a
// random axis at a rational cut; returns 1 when additivity holds exactly.
int partition_trial(std::int64_t i) {
  Rng rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i));
  const int dim = static_cast<int>(rng.uniform(1, 3));
  std::vector<Rational> lo, hi;
  for (int k = 0; k < dim; ++k) {
    Rational a = rng.rational(4, 3);
    lo.push_back(a);
    hi.push_back(a + rng.positive_rational(4, 2));
  }
  const Box whole(lo, hi);
  std::vector<Box> parts{whole};
  for (int cut = 0; cut < 6; ++cut) {
    const std::size_t pick = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(parts.size()) - 1));
    const Box b = parts[pick];
    const int axis = static_cast<int>(rng.uniform(0, dim - 1));
    const Rational t = rng.positive_rational(7, 8);
    const Rational at = b.lower()[axis] + t * (b.upper()[axis] - b.lower()[axis]) / 8;
    if (at <= b.lower()[axis] || at >= b.upper()[axis]) continue;
    auto lo1 = b.lower(), hi1 = b.upper(), lo2 = b.lower(), hi2 = b.upper();
    hi1[axis] = at;
    lo2[axis] = at;
    parts[pick] = Box(lo1, hi1);
    parts.emplace_back(lo2, hi2);
  }
  Rational total(0);
  for (const auto& p : parts) total += measure(p);
  const bool ok = total == measure(whole) &&
                  is_finite_partition(BoxSet::of(dim, parts), whole);
  return ok ? 1 : 0;
}

int law_trial(std::int64_t i) {
  Rng rng(0x517cc1b727220a95ULL + static_cast<std::uint64_t>(i));
  const SpaceDesc space = SpaceDesc::boxes(static_cast<int>(rng.uniform(1, 2)));
  const Elem f = random_element(rng, space);
  const Elem g = random_element(rng, space);
  const bool linear = elem_integral(elem_add(f, g)) == elem_integral(f) + elem_integral(g);
  const bool abs_bound = rat_abs(elem_integral(f)) <= elem_abs_integral(f);
  return (linear && abs_bound) ? 1 : 0;
}

template <class F>
double timed(std::int64_t n, const F& f, bool parallel, std::int64_t& passed) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<int> results = run_trials<int>(n, f, parallel);
  const auto stop = std::chrono::steady_clock::now();
  passed = 0;
  for (int r : results) passed += r;
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t n = argc > 1 ? std::stoll(argv[1]) : 2000;
  std::cout << "threads available: " << max_threads() << "\n";

  std::int64_t pass_serial = 0, pass_parallel = 0;
  const double t1 = timed(n, partition_trial, false, pass_serial);
  const double t2 = timed(n, partition_trial, true, pass_parallel);
  std::cout << "partition trials x" << n << ": serial " << t1 << "s, omp " << t2
            << "s, passed " << pass_serial << "/" << n
            << (pass_serial == pass_parallel ? " (identical results)" : " (MISMATCH)")
            << "\n";
  if (pass_serial != pass_parallel) return 1;

  const double t3 = timed(n, law_trial, false, pass_serial);
  const double t4 = timed(n, law_trial, true, pass_parallel);
  std::cout << "integral-law trials x" << n << ": serial " << t3 << "s, omp " << t4
            << "s, passed " << pass_serial << "/" << n
            << (pass_serial == pass_parallel ? " (identical results)" : " (MISMATCH)")
            << "\n";
  return pass_serial == pass_parallel ? 0 : 1;
}
