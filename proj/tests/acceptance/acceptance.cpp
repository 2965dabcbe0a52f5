// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpf/baseline.hpp"
#include "lpf/distribution.hpp"
#include "lpf/monodromy.hpp"
#include "lpf/parallel.hpp"
#include "lpf/solver.hpp"
#include "lpf/theorems.hpp"
#include "test_support.hpp"

namespace {

using namespace lpf;

constexpr std::size_t kTrials = 20000;
constexpr double kProbTol = 0.02;
constexpr double kBinTolPct = 1.5;
constexpr double kMeanTol = 0.15;
constexpr double kKacTol = 0.02;
constexpr double kSetTol = 1e-7;
constexpr double kDistinctTol = 1e-6;
constexpr double kFamilyTol = 1e-10;
constexpr double kCompleteness = 0.986;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

std::size_t workers() { return default_workers(); }

EmpiricalDistribution distribution(const Network& net, std::uint64_t seed, std::size_t trials = kTrials) {
  const StartSet& start = testing::cached_start(net);
  DistributionOptions opts;
  opts.trials = trials;
  opts.base_seed = seed;
  opts.workers = workers();
  return run_distribution(net, start, opts);
}

const EmpiricalDistribution& k4_distribution() {
  static const EmpiricalDistribution d = distribution(complete_graph(4), 4004);
  return d;
}

bool support_within(const EmpiricalDistribution& d, std::initializer_list<std::size_t> allowed) {
  for (const auto& [c, k] : d.histogram()) {
    if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) return false;
  }
  return true;
}

Verdict c3_distribution() {
  const auto d = distribution(cycle_graph(3), 3003);
  const double target = 3.0 - 4.0 / std::sqrt(3.0);
  const double p0 = d.frequency(0);
  const bool support = support_within(d, {0, 2});
  return {std::abs(p0 - target) <= kProbTol && support,
          "P(0)=" + fmt(p0) + " target " + fmt(target) + " +-" + fmt(kProbTol, 2) +
              ", support " + (support ? "{0,2}" : "outside {0,2}") + ", excluded " +
              std::to_string(d.excluded())};
}

Verdict c4_distribution() {
  const auto d = distribution(cycle_graph(4), 4003);
  const double p0 = d.frequency(0);
  const double p4 = d.frequency(4);
  const bool support = support_within(d, {0, 4});
  return {std::abs(p0 - 0.6945) <= kProbTol && std::abs(p4 - 0.3055) <= kProbTol && support,
          "P(0)=" + fmt(p0) + " target 0.6945, P(4)=" + fmt(p4) + " target 0.3055, +-" +
              fmt(kProbTol, 2)};
}

Verdict k4_table() {
  const auto& d = k4_distribution();
  const std::pair<std::size_t, double> table[] = {{0, 22.91}, {2, 38.38}, {4, 32.64}, {6, 5.32}, {8, 0.74}};
  bool ok = true;
  std::string detail;
  for (const auto& [count, pct] : table) {
    const double got = 100.0 * d.frequency(count);
    ok = ok && std::abs(got - pct) <= kBinTolPct;
    detail += std::to_string(count) + ":" + fmt(got, 2) + "/" + fmt(pct, 2) + " ";
  }
  return {ok, detail + "(+-" + fmt(kBinTolPct, 1) + "pp)"};
}

Verdict orbit_counts() {
  struct Case {
    const char* name;
    Network net;
    bool bipartite;
    std::size_t reps;
    std::size_t order;
  };
  const Case cases[] = {{"K4", complete_graph(4), true, 6, 2},
                        {"C5", cycle_graph(5), true, 7, 2},
                        {"C6", cycle_graph(6), false, 14, 2},
                        {"C4", cycle_graph(4), true, 1, 4}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    MonodromyOptions opts;
    opts.use_bipartite = c.bipartite;
    opts.workers = workers();
    const StartSet s = build_start_set(c.net, 777, opts);
    const auto bound = solution_count_bounds(family_of(c.net), c.net.num_nodes());
    const bool good = s.complete && s.representatives.size() == c.reps && s.group_order == c.order &&
                      bound && bound->nontrivial == c.reps * c.order;
    // One path per representative on a generic solve.
    Rng rng(5);
    const SolutionSet sol = solve_all(c.net, sample_sphere(c.net.num_edges(), rng), s, rng);
    const bool paths = sol.paths_tracked == c.reps && sol.complete;
    ok = ok && good && paths;
    detail += std::string(c.name) + "=" + std::to_string(s.representatives.size()) + "/order " +
              std::to_string(s.group_order) + (paths ? "" : " (path count off)") + " ";
  }
  return {ok, detail};
}

Verdict oracle_equivalence() {
  bool ok = true;
  double worst = 0.0;
  std::size_t compared = 0;
  for (const Network& net : {cycle_graph(3), cycle_graph(4)}) {
    const PolySystem sys = build_system(net);
    Rng rng(55);
    for (int i = 0; i < 25; ++i) {
      const std::vector<double> b = sample_sphere(net.num_edges(), rng);
      const SolutionSet s = solve_all(net, b, testing::cached_start(net), rng);
      const TotalDegreeResult td = solve_total_degree(net, b, rng);
      const auto mono = testing::all_solutions(s);
      const double dist = set_distance(mono, td.solutions);
      const auto cls = classify_real(sys, real_to_complex(b), td.solutions);
      const std::size_t td_real = std::count(cls.real.begin(), cls.real.end(), true);
      worst = std::max(worst, dist);
      ok = ok && s.complete && mono.size() == td.solutions.size() && dist < kSetTol &&
           td_real == s.real_total();
      ++compared;
    }
  }
  std::ostringstream os;
  os << compared << " parameter points, worst set distance " << std::scientific << std::setprecision(1)
     << worst << " (< 1e-7)";
  return {ok, os.str()};
}

Verdict max_real() {
  bool ok = true;
  std::string detail;
  for (std::size_t n = 3; n <= 6; ++n) {
    const Network net = cycle_graph(n);
    const auto c = max_real_construction(n);
    Rng rng(n);
    const SolutionSet s = solve_all(net, c.b, testing::cached_start(net), rng);
    const auto all = testing::all_solutions(s);
    double closest = 1e300;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) closest = std::min(closest, distance_inf(all[i], all[j]));
    }
    const bool good = s.complete && !s.degenerate && s.real_total() == c.expected_real_total &&
                      all.size() == c.expected_real_total && closest > kDistinctTol;
    ok = ok && good;
    detail += "C" + std::to_string(n) + "=" + std::to_string(s.real_total()) + "/" +
              std::to_string(c.expected_real_total) + " ";
  }
  return {ok, detail + "(all distinct to 1e-6)"};
}

Verdict degeneracy() {
  bool ok = true;
  std::string detail;
  for (const Network& net : {cycle_graph(4), cycle_graph(8), complete_graph(4), complete_graph(6)}) {
    const std::vector<double> b(net.num_edges(), 1.0);
    Rng rng(8);
    const FamilyCheck fc = verify_infinite_family(net, b, rng);
    const SolutionSet s = solve_all(net, b, testing::cached_start(net), rng);
    const bool good = s.degenerate && fc.holds && fc.max_residual < kFamilyTol;
    ok = ok && good;
    std::ostringstream os;
    os << net.describe() << (s.degenerate ? " degenerate" : " NOT degenerate") << " res "
       << std::scientific << std::setprecision(1) << fc.max_residual << "; ";
    detail += os.str();
  }
  return {ok, detail};
}

Verdict trees() {
  bool ok = true;
  std::string detail;
  Rng rng(9);
  const Network path = tree_from_edges({{0, 1}, {1, 2}, {2, 3}});
  const Network star = tree_from_edges({{0, 1}, {0, 2}, {0, 3}});
  for (const auto& [name, net] : {std::pair{"path", path}, std::pair{"star", star}}) {
    const TreeCheck tc = check_tree_trivial(net, 100, rng);
    ok = ok && tc.holds && tc.counts.size() == 100;
    detail += std::string(name) + (tc.holds ? " 0 nontrivial in 100 trials; " : " FOUND nontrivial; ");
  }
  return {ok, detail};
}

Verdict kac() {
  const std::pair<std::size_t, double> table[] = {{2, 1.30}, {4, 1.64}, {12, 2.26}, {54, 3.18}};
  bool ok = true;
  std::string detail;
  for (const auto& [n, v] : table) {
    const double got = kac_expected(n);
    ok = ok && std::abs(got - v) <= kKacTol;
    detail += "N=" + std::to_string(n) + ":" + fmt(got, 3) + " ";
  }
  const auto d = random_poly_distribution(12, 10000, 1212, workers());
  double var = 0.0;
  for (const auto& [c, k] : d.histogram()) var += double(k) * std::pow(double(c) - d.mean(), 2);
  const double se = std::sqrt(var / double(d.included() - 1) / double(d.included()));
  const double z = std::abs(d.mean() - kac_expected(12)) / se;
  ok = ok && z <= 3.0;
  return {ok, detail + "; N=12 Monte Carlo " + fmt(d.mean(), 3) + " (" + fmt(z, 2) + " SE)"};
}

Verdict expected_values() {
  const auto c5 = distribution(cycle_graph(5), 5005);
  const auto& k4 = k4_distribution();
  const double kac14 = kac_expected(14);
  const double kac12 = kac_expected(12);
  const bool ok = std::abs(c5.mean() - 2.85) <= kMeanTol && std::abs(k4.mean() - 2.45) <= kMeanTol &&
                  c5.mean() > kac14 && k4.mean() > kac12;
  return {ok, "C5 " + fmt(c5.mean(), 3) + " (2.85, kac " + fmt(kac14, 3) + "), K4 " + fmt(k4.mean(), 3) +
                  " (2.45, kac " + fmt(kac12, 3) + "), +-" + fmt(kMeanTol, 2) + ", C5 excluded " +
                  std::to_string(c5.excluded())};
}

Verdict completeness() {
  const Network net = complete_graph(4);
  const StartSet& start = testing::cached_start(net);
  std::size_t complete = 0;
  const std::size_t trials = 1000;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(1111, i));
    const SolutionSet s = solve_all(net, sample_sphere(net.num_edges(), rng), start, rng);
    complete += s.complete;
  }
  const double frac = double(complete) / double(trials);
  return {frac >= kCompleteness, fmt(frac, 3) + " of " + std::to_string(trials) + " solves complete (>= 0.986)"};
}

Verdict reproducibility() {
  const Network net = complete_graph(4);
  const StartSet& start = testing::cached_start(net);
  DistributionOptions opts;
  opts.trials = 1500;
  opts.base_seed = 1212;
  opts.workers = 1;
  const auto one = run_distribution(net, start, opts);
  opts.workers = 4;
  const auto four = run_distribution(net, start, opts);

  testing::TempDir dir("acceptance");
  opts.workers = 2;
  opts.chunk = 500;
  opts.log_path = dir / "full.jsonl";
  const auto logged = run_distribution(net, start, opts);
  const std::string full = testing::read_file(dir / "full.jsonl");
  std::size_t cut = 0;
  for (int lines = 0; lines < 700; ++lines) cut = full.find('\n', cut) + 1;
  testing::write_file(dir / "part.jsonl", full.substr(0, cut + 40));
  opts.log_path = dir / "part.jsonl";
  opts.resume = true;
  const auto resumed = run_distribution(net, start, opts);
  const bool same_workers = one == four && one == logged;
  const bool same_resume = resumed == logged && testing::read_file(dir / "part.jsonl") == full;
  return {same_workers && same_resume,
          std::string("workers 1/2/4 ") + (same_workers ? "identical" : "DIFFER") + ", resume after 700 trials " +
              (same_resume ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"C3 exact distribution", c3_distribution},
      {"C4 distribution", c4_distribution},
      {"K4 table regression", k4_table},
      {"orbit representative counts", orbit_counts},
      {"total-degree oracle equivalence", oracle_equivalence},
      {"maximal real solutions on cycles", max_real},
      {"degenerate equal susceptances", degeneracy},
      {"trees have only trivial real solutions", trees},
      {"Kac expected values", kac},
      {"network means above Kac", expected_values},
      {"K4 completeness", completeness},
      {"reproducibility and resume", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << v.detail << " (" << fmt(secs, 1) << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
