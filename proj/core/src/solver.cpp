#include "lpf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpf/errors.hpp"
#include "lpf/parallel.hpp"

namespace lpf {

void StartSet::check_matches(const Network& net) const {
  if (num_nodes != net.num_nodes() || edges != net.edges() ||
      injections != net.injections()) {
    throw PreconditionError("start set was built for " + topology + ", not " + net.describe());
  }
  if (b_hat.size() != net.num_edges()) {
    throw PreconditionError("start set parameters do not match the edge count");
  }
  for (const auto& r : representatives) {
    if (r.size() != net.num_variables()) {
      throw PreconditionError("start set point has the wrong dimension");
    }
  }
}

StartSet build_start_set(const Network& net, std::uint64_t seed, const MonodromyOptions& opts,
                         int attempts) {
  Rng rng(seed);
  const StoppingRule stop = StoppingRule::for_network(net);
  StartSet out;
  out.topology = net.describe();
  out.num_nodes = net.num_nodes();
  out.edges = net.edges();
  out.injections = net.injections();
  out.bipartite_action = opts.use_bipartite;
  out.expected_count = stop.known_count;
  out.seed = seed;
  out.dedup_tol = opts.dedup_tol;
  for (int a = 0; a < std::max(attempts, 1); ++a) {
    const SeedPair sp = construct_seed(net, rng);
    const OrbitSet os = monodromy_solve(net, sp, stop, rng, opts);
    out.b_hat = os.b_hat;
    out.representatives = os.representatives;
    out.group_order = os.group_order;
    out.solution_count = os.solution_count;
    out.complete = os.complete;
    out.loops += os.loops;
    if (os.complete) break;
  }
  return out;
}

std::size_t SolutionSet::real_nontrivial_count() const {
  return static_cast<std::size_t>(std::count(nontrivial_real.begin(), nontrivial_real.end(), true));
}

double SolutionSet::completeness() const {
  if (expected_nontrivial == 0) return 1.0;
  return static_cast<double>(nontrivial.size()) / static_cast<double>(expected_nontrivial);
}

RealClassification classify_real(const ParametricSystem& system, std::span<const Complex> params,
                                 const std::vector<ComplexVector>& points, double tol,
                                 double same_root_tol) {
  RealClassification out;
  out.real.assign(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ComplexVector& z = points[i];
    const bool small_imag =
        std::all_of(z.begin(), z.end(), [tol](Complex c) { return std::abs(c.imag()) < tol; });
    if (!small_imag) continue;
    ComplexVector proj(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) proj[k] = z[k].real();
    const NewtonResult nr = newton_refine(system, params, proj);
    if (!nr.converged || distance_inf(nr.point, z) >= same_root_tol) continue;
    out.real[i] = true;
    if (!is_trivial_point(z)) ++out.nontrivial_count;
  }
  return out;
}

namespace {

bool ill_conditioned(const Network& net, std::span<const Complex> params,
                     const std::vector<ComplexVector>& points, double limit) {
  const PolySystemUV system(net);
  ComplexMatrix jac(system.num_variables(), system.num_variables());
  for (const auto& z : points) {
    const ComplexVector w = xy_to_uv(z);
    system.jacobian(w, params, jac);
    if (!(relative_condition(jac, w) <= limit)) return true;
  }
  return false;
}

}  // namespace

SolutionSet solve_all(const Network& net, std::span<const double> b, const StartSet& start,
                      Rng& rng, const SolveOptions& opts) {
  start.check_matches(net);
  if (!start.complete) throw PreconditionError("solve_all: start set is incomplete");
  if (b.size() != net.num_edges()) {
    throw PreconditionError("solve_all: expected " + std::to_string(net.num_edges()) +
                            " susceptances, got " + std::to_string(b.size()));
  }
  if (!std::all_of(b.begin(), b.end(), [](double v) { return std::isfinite(v); }) ||
      std::all_of(b.begin(), b.end(), [](double v) { return v == 0.0; })) {
    throw PreconditionError("solve_all: susceptances must be finite and not all zero");
  }

  const PolySystem sys = build_system(net);
  const PolySystemUV uv(net);
  const ComplexVector target = real_to_complex(b);
  OrbitRegistry registry(SymmetryGroup::for_network(net, start.bipartite_action),
                         opts.dedup_tol);
  if (registry.group().order() != start.group_order) {
    throw PreconditionError("solve_all: start set symmetry group does not match the network");
  }

  SolutionSet out;
  out.expected_nontrivial = start.expected_count
                                ? static_cast<std::size_t>(*start.expected_count)
                                : start.solution_count;
  out.paths_tracked = start.representatives.size();

  // One path per representative; paths that fail are retried with fresh gammas.
  std::vector<std::size_t> pending(start.representatives.size());
  for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;
  for (std::size_t attempt = 0; attempt <= opts.path_retries && !pending.empty(); ++attempt) {
    const Homotopy h = parameter_segment(uv, start.b_hat, target, rng);
    std::vector<PathResult> results(pending.size());
    parallel_for(pending.size(), opts.workers, [&](std::size_t i) {
      results[i] = track_path(h, xy_to_uv(start.representatives[pending[i]]), opts.track);
    });
    std::vector<std::size_t> failed;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const PathResult& r = results[i];
      if (!r.success()) {
        if (r.status == PathStatus::SingularEnd) ++out.singular_endpoints;
        ++out.failed_paths;
        failed.push_back(pending[i]);
        continue;
      }
      const ComplexVector z = uv_to_xy(r.endpoint);
      if (!is_trivial_point(z)) registry.insert(z);
    }
    pending = std::move(failed);
  }

  MonodromyOptions mopts;
  mopts.track = opts.track;
  mopts.refine = opts.refine;
  mopts.dedup_tol = opts.dedup_tol;
  mopts.workers = opts.workers;
  mopts.use_bipartite = start.bipartite_action;
  StoppingRule stop;
  stop.known_count = out.expected_nontrivial;
  stop.loop_budget = opts.repair_loops;
  while (registry.solution_count() < out.expected_nontrivial && !registry.representatives().empty() &&
         out.repair_rounds < opts.repair_rounds) {
    ++out.repair_rounds;
    const OrbitSet os = monodromy_extend(net, target, registry, stop, rng, mopts);
    out.repair_loops += os.loops;
  }

  out.nontrivial = registry.expand();
  if (net.zero_injection()) out.trivial = trivial_solutions(net.num_nodes());
  out.nontrivial_real =
      classify_real(sys, target, out.nontrivial, opts.real_tol, opts.same_root_tol).real;
  out.complete = out.nontrivial.size() == out.expected_nontrivial;
  const bool singular = ill_conditioned(net, target, out.nontrivial, opts.singular_condition) ||
                        ill_conditioned(net, target, out.trivial, opts.singular_condition);
  out.degenerate = singular || (!out.complete && out.singular_endpoints > 0);
  return out;
}

TotalDegreeResult solve_total_degree(const Network& net, std::span<const double> b, Rng& rng,
                                     const SolveOptions& opts) {
  if (b.size() != net.num_edges()) {
    throw PreconditionError("solve_total_degree: expected one susceptance per edge");
  }
  const PolySystemUV system(net);
  const ComplexVector params(b.begin(), b.end());
  const TotalDegreeStart start = total_degree_start(system, params, rng);
  const auto results = track_all(start.homotopy, start.start_points, opts.track, opts.workers);
  TotalDegreeResult out;
  out.paths = results.size();
  for (const PathResult& r : results) {
    if (r.status == PathStatus::Diverged) {
      ++out.diverged;
      continue;
    }
    if (!r.success()) {
      ++out.failed;
      continue;
    }
    ComplexVector z = uv_to_xy(r.endpoint);
    const double scale = opts.dedup_tol * std::max(1.0, norm_inf(z));
    const bool seen = std::any_of(out.solutions.begin(), out.solutions.end(),
                                  [&](const ComplexVector& s) { return distance_inf(s, z) < scale; });
    if (!seen) out.solutions.push_back(std::move(z));
  }
  return out;
}

double set_distance(const std::vector<ComplexVector>& a, const std::vector<ComplexVector>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one_way = [](const std::vector<ComplexVector>& p, const std::vector<ComplexVector>& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) best = std::min(best, distance_inf(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace lpf
