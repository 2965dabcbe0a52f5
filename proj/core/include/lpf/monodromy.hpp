#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpf/linalg.hpp"
#include "lpf/network.hpp"
#include "lpf/tracker.hpp"

namespace lpf {

/// Parameters b_hat together with one nontrivial solution of F(.; b_hat).
struct SeedPair {
  ComplexVector b_hat;
  ComplexVector point;
};

/// Picks random complex x_k, sets y_k = sqrt(1 - x_k^2) and solves the flow
/// equations (linear in b) for b_hat. With zero injection b_hat is a random
/// unit kernel vector. Throws SeedConstructionError after `max_attempts`
/// failed draws; this always happens for trees with zero injection.
SeedPair construct_seed(const Network& net, Rng& rng, int max_attempts = 20);

struct StoppingRule {
  /// Number of solutions to find; when absent, stop after `quiet_loops`
  /// consecutive loops without a new solution.
  std::optional<std::uint64_t> known_count;
  std::size_t quiet_loops = 10;
  std::size_t loop_budget = 500;

  /// Known count from the closed-form bounds when the family has one.
  static StoppingRule for_network(const Network& net);
};

struct MonodromyOptions {
  TrackOptions track;
  NewtonOptions refine{1e-12, 20, false};
  double dedup_tol = 1e-8;
  std::size_t workers = 1;
  bool use_bipartite = true;
};

/// Solutions up to symmetry, one representative per orbit. Two points are
/// the same when their max-norm distance is at most tol * max(1, |z|_inf).
class OrbitRegistry {
 public:
  OrbitRegistry(SymmetryGroup group, double tol);

  const SymmetryGroup& group() const { return group_; }
  double tolerance() const { return tol_; }
  const std::vector<ComplexVector>& representatives() const { return reps_; }
  /// Number of solutions covered: the sum of orbit sizes.
  std::size_t solution_count() const { return count_; }

  bool contains(std::span<const Complex> z) const;
  /// Adds z unless its orbit is already present. Returns true if added.
  bool insert(std::span<const Complex> z);
  /// All orbit members of all representatives.
  std::vector<ComplexVector> expand() const;

 private:
  SymmetryGroup group_;
  double tol_;
  std::vector<ComplexVector> reps_;
  std::size_t count_ = 0;
};

struct OrbitSet {
  ComplexVector b_hat;
  std::vector<ComplexVector> representatives;
  std::size_t group_order = 1;
  double dedup_tol = 1e-8;
  /// Solutions covered by the representatives after orbit expansion.
  std::size_t solution_count = 0;
  bool complete = false;
  std::size_t loops = 0;
  std::size_t failed_paths = 0;
};

struct LoopResult {
  std::vector<ComplexVector> endpoints;  // successful paths, in input order
  std::size_t failed_paths = 0;
};

/// Tracks every point around b_hat -> b1 -> b2 -> b_hat with fresh gammas on
/// each leg. Endpoints are refined at b_hat by the tracker endgame; failed
/// paths are dropped.
/// Points are in (x, y) coordinates; tracking runs on PolySystemUV.
LoopResult loop_through(const Network& net, std::span<const Complex> b_hat,
                        std::span<const Complex> b1, std::span<const Complex> b2,
                        const std::vector<ComplexVector>& points, Rng& rng,
                        const MonodromyOptions& opts = {});

/// One loop through two random intermediate parameter points, scaled to the
/// norm of b_hat. Inserts new endpoints into the registry and returns them.
std::vector<ComplexVector> loop_once(const Network& net,
                                     std::span<const Complex> b_hat, OrbitRegistry& registry,
                                     Rng& rng, const MonodromyOptions& opts = {},
                                     std::size_t* failed_paths = nullptr);

/// Runs loops from the points already in `registry` until the stopping rule
/// is met or the loop budget runs out.
OrbitSet monodromy_extend(const Network& net, std::span<const Complex> b_hat,
                          OrbitRegistry& registry, const StoppingRule& stop, Rng& rng,
                          const MonodromyOptions& opts = {});

/// Populates the nontrivial solutions at seed.b_hat modulo symmetry.
OrbitSet monodromy_solve(const Network& net, const SeedPair& seed, const StoppingRule& stop,
                         Rng& rng, const MonodromyOptions& opts = {});

}  // namespace lpf
