#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpf/monodromy.hpp"
#include "lpf/network.hpp"
#include "lpf/tracker.hpp"

namespace lpf {

/// Cached monodromy result reused as the start of every parameter homotopy
/// on one network.
struct StartSet {
  std::string topology;  // Network::describe()
  std::size_t num_nodes = 0;
  std::vector<Edge> edges;
  std::vector<double> injections;
  ComplexVector b_hat;
  std::vector<ComplexVector> representatives;
  std::size_t group_order = 1;
  bool bipartite_action = true;
  /// Solutions covered by the representatives after orbit expansion.
  std::size_t solution_count = 0;
  std::optional<std::uint64_t> expected_count;
  bool complete = false;
  std::uint64_t seed = 0;
  double dedup_tol = 1e-8;
  std::size_t loops = 0;

  /// Throws PreconditionError if the start set was built for another network.
  void check_matches(const Network& net) const;
};

/// Seed construction followed by monodromy. Retries with fresh seeds (drawn
/// from the same rng stream) up to `attempts` times while incomplete.
StartSet build_start_set(const Network& net, std::uint64_t seed,
                         const MonodromyOptions& opts = {}, int attempts = 3);

struct SolveOptions {
  TrackOptions track;
  NewtonOptions refine{1e-12, 20, false};
  double dedup_tol = 1e-8;
  double real_tol = 1e-8;
  /// Two roots closer than this are the same root when classifying.
  double same_root_tol = 1e-6;
  /// Endpoints with a larger Jacobian condition number count as singular.
  double singular_condition = 1e12;
  /// Fresh-gamma retries of failed paths before monodromy repair.
  std::size_t path_retries = 2;
  std::size_t repair_rounds = 3;
  std::size_t repair_loops = 20;
  std::size_t workers = 1;
};

struct SolutionSet {
  std::vector<ComplexVector> nontrivial;
  std::vector<bool> nontrivial_real;
  std::vector<ComplexVector> trivial;
  std::size_t expected_nontrivial = 0;
  std::size_t paths_tracked = 0;
  std::size_t failed_paths = 0;
  std::size_t singular_endpoints = 0;
  std::size_t repair_rounds = 0;
  std::size_t repair_loops = 0;
  bool complete = false;
  bool degenerate = false;

  std::size_t real_nontrivial_count() const;
  /// Real nontrivial solutions plus all trivial solutions.
  std::size_t real_total() const { return real_nontrivial_count() + trivial.size(); }
  /// found / expected over the nontrivial solutions.
  double completeness() const;
};

/// All isolated complex solutions at the real parameters b, by one parameter
/// homotopy path per start representative, orbit expansion and monodromy
/// repair of lost endpoints. b is used as given (no normalization).
SolutionSet solve_all(const Network& net, std::span<const double> b, const StartSet& start,
                      Rng& rng, const SolveOptions& opts = {});

struct TotalDegreeResult {
  /// Distinct finite endpoints in (x, y) coordinates, trivial ones included.
  std::vector<ComplexVector> solutions;
  std::size_t paths = 0;
  std::size_t diverged = 0;
  std::size_t failed = 0;
};

/// Every finite solution by a total-degree homotopy with prod(d_i) paths.
/// Independent of monodromy; intended as a cross-check on small networks.
TotalDegreeResult solve_total_degree(const Network& net, std::span<const double> b, Rng& rng,
                                     const SolveOptions& opts = {});

/// Largest distance from a point of one set to its nearest point in the other.
double set_distance(const std::vector<ComplexVector>& a, const std::vector<ComplexVector>& b);

struct RealClassification {
  std::vector<bool> real;
  /// Real points that are not trivial solutions.
  std::size_t nontrivial_count = 0;
};

/// A point is real when its imaginary parts are below tol and Newton started
/// from its real projection converges back to it.
RealClassification classify_real(const ParametricSystem& system, std::span<const Complex> params,
                                 const std::vector<ComplexVector>& points, double tol = 1e-8,
                                 double same_root_tol = 1e-6);

}  // namespace lpf
