#include "lpf/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "lpf/errors.hpp"
#include "lpf/parallel.hpp"

namespace lpf {

SeedPair construct_seed(const Network& net, Rng& rng, int max_attempts) {
  const PolySystem sys = build_system(net);
  const std::size_t m = net.num_nodes() - 1;
  const ComplexVector p = real_to_complex(net.injections());
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ComplexVector z(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      z[k] = standard_complex_normal(rng);
      z[m + k] = std::sqrt(1.0 - z[k] * z[k]);
    }
    if (is_trivial_point(z)) continue;
    const ComplexMatrix a = sys.flow_matrix(z);
    ComplexVector b;
    try {
      if (net.zero_injection()) {
        b = nullspace_vector(a, rng);
      } else {
        b = particular_solution(a, p);
        const auto kernel = nullspace_basis(a);
        for (const auto& v : kernel) {
          const Complex c = standard_complex_normal(rng);
          for (std::size_t i = 0; i < b.size(); ++i) b[i] += c * v[i];
        }
      }
    } catch (const SingularMatrixError&) {
      continue;
    }
    if (norm_inf(b) == 0.0) continue;
    if (sys.residual_norm(z, b) > 1e-10) continue;
    return {std::move(b), std::move(z)};
  }
  throw SeedConstructionError("construct_seed: no seed found for " + net.describe() + " after " +
                              std::to_string(max_attempts) + " attempts");
}

StoppingRule StoppingRule::for_network(const Network& net) {
  StoppingRule rule;
  rule.known_count = expected_monodromy_count(net);
  return rule;
}

// ---------------------------------------------------------------------------

OrbitRegistry::OrbitRegistry(SymmetryGroup group, double tol)
    : group_(std::move(group)), tol_(tol) {}

bool OrbitRegistry::contains(std::span<const Complex> z) const {
  const double tol = tol_ * std::max(1.0, norm_inf(z));
  for (const auto& r : reps_) {
    if (group_.orbit_distance(r, z) <= tol) return true;
  }
  return false;
}

bool OrbitRegistry::insert(std::span<const Complex> z) {
  if (contains(z)) return false;
  reps_.emplace_back(z.begin(), z.end());
  count_ += group_.orbit(z, tol_ * std::max(1.0, norm_inf(z))).size();
  return true;
}

std::vector<ComplexVector> OrbitRegistry::expand() const {
  std::vector<ComplexVector> out;
  for (const auto& r : reps_) {
    for (auto& p : group_.orbit(r, tol_ * std::max(1.0, norm_inf(r)))) out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------

LoopResult loop_through(const Network& net, std::span<const Complex> b_hat,
                        std::span<const Complex> b1, std::span<const Complex> b2,
                        const std::vector<ComplexVector>& points, Rng& rng,
                        const MonodromyOptions& opts) {
  const PolySystemUV system(net);
  const Homotopy legs[] = {parameter_segment(system, b_hat, b1, rng),
                           parameter_segment(system, b1, b2, rng),
                           parameter_segment(system, b2, b_hat, rng)};
  std::vector<std::optional<ComplexVector>> ends(points.size());
  parallel_for(points.size(), opts.workers, [&](std::size_t i) {
    ComplexVector w = xy_to_uv(points[i]);
    for (const Homotopy& leg : legs) {
      PathResult r = track_path(leg, w, opts.track);
      if (!r.success()) return;
      w = std::move(r.endpoint);
    }
    ends[i] = uv_to_xy(w);
  });
  LoopResult out;
  for (auto& e : ends) {
    if (e) {
      out.endpoints.push_back(std::move(*e));
    } else {
      ++out.failed_paths;
    }
  }
  return out;
}

namespace {

ComplexVector random_parameters(std::size_t dim, double scale, Rng& rng) {
  ComplexVector v(dim);
  for (auto& c : v) c = standard_complex_normal(rng);
  const double s = scale / norm2(v);
  for (auto& c : v) c *= s;
  return v;
}

}  // namespace

std::vector<ComplexVector> loop_once(const Network& net,
                                     std::span<const Complex> b_hat, OrbitRegistry& registry,
                                     Rng& rng, const MonodromyOptions& opts,
                                     std::size_t* failed_paths) {
  if (registry.representatives().empty()) {
    throw PreconditionError("loop_once: no starting points");
  }
  const double scale = norm2(b_hat);
  const ComplexVector b1 = random_parameters(b_hat.size(), scale, rng);
  const ComplexVector b2 = random_parameters(b_hat.size(), scale, rng);
  const std::vector<ComplexVector> current = registry.representatives();
  LoopResult lr = loop_through(net, b_hat, b1, b2, current, rng, opts);
  if (failed_paths) *failed_paths += lr.failed_paths;
  std::vector<ComplexVector> found;
  for (auto& e : lr.endpoints) {
    if (is_trivial_point(e)) continue;
    if (registry.insert(e)) found.push_back(std::move(e));
  }
  return found;
}

OrbitSet monodromy_extend(const Network& net, std::span<const Complex> b_hat,
                          OrbitRegistry& registry, const StoppingRule& stop, Rng& rng,
                          const MonodromyOptions& opts) {
  OrbitSet out;
  out.b_hat.assign(b_hat.begin(), b_hat.end());
  out.group_order = registry.group().order();
  out.dedup_tol = registry.tolerance();
  auto done = [&] {
    return stop.known_count && registry.solution_count() >= *stop.known_count;
  };
  std::size_t quiet = 0;
  while (!done() && out.loops < stop.loop_budget) {
    ++out.loops;
    const auto found = loop_once(net, b_hat, registry, rng, opts, &out.failed_paths);
    quiet = found.empty() ? quiet + 1 : 0;
    if (!stop.known_count && quiet >= stop.quiet_loops) break;
  }
  out.representatives = registry.representatives();
  out.solution_count = registry.solution_count();
  out.complete = stop.known_count ? registry.solution_count() == *stop.known_count
                                  : quiet >= stop.quiet_loops;
  return out;
}

OrbitSet monodromy_solve(const Network& net, const SeedPair& seed, const StoppingRule& stop,
                         Rng& rng, const MonodromyOptions& opts) {
  const PolySystem sys = build_system(net);
  if (seed.b_hat.size() != net.num_edges() || seed.point.size() != net.num_variables()) {
    throw PreconditionError("monodromy_solve: seed does not match the network");
  }
  const NewtonResult nr = newton_refine(sys, seed.b_hat, seed.point, opts.refine);
  if (!nr.converged || is_trivial_point(nr.point)) {
    throw PreconditionError("monodromy_solve: seed point is not a nontrivial solution");
  }
  OrbitRegistry registry(SymmetryGroup::for_network(net, opts.use_bipartite), opts.dedup_tol);
  registry.insert(nr.point);
  return monodromy_extend(net, seed.b_hat, registry, stop, rng, opts);
}

}  // namespace lpf
