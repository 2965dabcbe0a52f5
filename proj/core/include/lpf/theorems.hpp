#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lpf/linalg.hpp"
#include "lpf/network.hpp"

namespace lpf {

struct FamilyCheck {
  bool holds = false;
  double max_residual = 0.0;
  std::size_t samples = 0;
};

/// Real points of the closed-form positive-dimensional solution family for
/// equal susceptances: K_n (n >= 4) or C_n with 4 | n. Each call draws fresh
/// free angles.
std::vector<ComplexVector> infinite_family_samples(const Network& net, std::size_t count,
                                                   Rng& rng);

/// Evaluates F(.; b) on `samples` family members; holds iff every residual is
/// below tol. Throws PreconditionError for unsupported topologies.
FamilyCheck verify_infinite_family(const Network& net, std::span<const double> b, Rng& rng,
                                   std::size_t samples = 50, double tol = 1e-10);

struct TreeCheck {
  bool holds = false;
  /// Distinct nontrivial real solutions found per trial.
  std::vector<std::size_t> counts;
};

/// Number of distinct nontrivial real solutions found by a grid sweep over
/// angle space with Newton polishing from every grid point.
std::size_t angle_grid_nontrivial_count(const Network& net, std::span<const double> b,
                                        std::size_t grid_per_dim = 16);

/// For `trials` random sphere susceptances, checks that the angle-space sweep
/// finds no nontrivial real solution. Requires a tree.
TreeCheck check_tree_trivial(const Network& net, std::size_t trials, Rng& rng,
                             std::size_t grid_per_dim = 16);

struct MaxRealConstruction {
  std::vector<double> b;
  std::uint64_t expected_real_total = 0;
};

/// Susceptances on C_n whose solutions are all real: all ones when 4 does
/// not divide n, otherwise b_01 = -1 and the rest 1.
MaxRealConstruction max_real_construction(std::size_t n);

}  // namespace lpf
