#include <gtest/gtest.h>

#include <cmath>

#include "lpf/distribution.hpp"
#include "lpf/errors.hpp"
#include "lpf/solver.hpp"
#include "test_support.hpp"

namespace lpf {
namespace {

using testing::all_solutions;
using testing::cached_start;

TEST(StartSet, BuiltStartSetIsComplete) {
  const StartSet& s = cached_start(complete_graph(4));
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.solution_count, 12u);
  EXPECT_EQ(s.expected_count, 12u);
  EXPECT_EQ(s.representatives.size(), 6u);
  EXPECT_NO_THROW(s.check_matches(complete_graph(4)));
  EXPECT_THROW(s.check_matches(cycle_graph(4)), PreconditionError);
}

TEST(SolveAll, UnitC3HasTwoRealNontrivialSolutions) {
  const Network net = cycle_graph(3);
  Rng rng(1);
  const std::vector<double> b{1.0, 1.0, 1.0};
  const SolutionSet s = solve_all(net, b, cached_start(net), rng);
  EXPECT_TRUE(s.complete);
  EXPECT_FALSE(s.degenerate);
  EXPECT_EQ(s.nontrivial.size(), 2u);
  EXPECT_EQ(s.real_nontrivial_count(), 2u);
  EXPECT_EQ(s.trivial.size(), 4u);
  EXPECT_EQ(s.real_total(), 6u);
  // Angles 0, 2pi/3, 4pi/3: x = -1/2, y = +-sqrt(3)/2.
  for (const auto& z : s.nontrivial) {
    EXPECT_NEAR(z[0].real(), -0.5, 1e-10);
    EXPECT_NEAR(z[1].real(), -0.5, 1e-10);
    EXPECT_NEAR(std::abs(z[2].real()), std::sqrt(3.0) / 2.0, 1e-10);
  }
}

TEST(SolveAll, RandomParametersGiveGenericCount) {
  Rng rng(2);
  for (const Network& net : {complete_graph(4), cycle_graph(5), complete_graph(5)}) {
    const PolySystem sys(net);
    const StartSet& start = cached_start(net);
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<double> b = sample_sphere(net.num_edges(), rng);
      const SolutionSet s = solve_all(net, b, start, rng);
      EXPECT_TRUE(s.complete) << net.describe();
      EXPECT_EQ(s.nontrivial.size(), *start.expected_count);
      EXPECT_EQ(s.completeness(), 1.0);
      EXPECT_EQ(s.real_nontrivial_count() % 2, 0u);
      const ComplexVector bc = real_to_complex(b);
      for (const auto& z : all_solutions(s)) EXPECT_LT(sys.residual_norm(z, bc), 1e-8 * (1 + norm_inf(z) * norm_inf(z)));
    }
  }
}

TEST(SolveAll, SolutionSetIsClosedUnderConjugation) {
  Rng rng(3);
  const Network net = complete_graph(4);
  const std::vector<double> b = sample_sphere(net.num_edges(), rng);
  const SolutionSet s = solve_all(net, b, cached_start(net), rng);
  for (const auto& z : s.nontrivial) {
    ComplexVector c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = std::conj(z[i]);
    double best = 1e300;
    for (const auto& w : s.nontrivial) best = std::min(best, distance_inf(c, w));
    EXPECT_LT(best, 1e-7);
  }
}

TEST(SolveAll, RealCountIsInvariantUnderScalingAndNegation) {
  Rng rng(4);
  const Network net = cycle_graph(5);
  const StartSet& start = cached_start(net);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> b = sample_sphere(net.num_edges(), rng);
    const std::size_t base = solve_all(net, b, start, rng).real_nontrivial_count();
    for (double c : {3.5, -1.0}) {
      std::vector<double> scaled = b;
      for (double& x : scaled) x *= c;
      EXPECT_EQ(solve_all(net, scaled, start, rng).real_nontrivial_count(), base);
    }
  }
}

TEST(SolveAll, CycleCountIsInvariantUnderEdgePermutation) {
  Rng rng(5);
  const Network net = cycle_graph(3);
  const StartSet& start = cached_start(net);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> b = sample_sphere(3, rng);
    const std::size_t base = solve_all(net, b, start, rng).real_nontrivial_count();
    std::rotate(b.begin(), b.begin() + 1, b.end());
    EXPECT_EQ(solve_all(net, b, start, rng).real_nontrivial_count(), base);
  }
}

TEST(SolveAll, SameSeedSameResultAnyWorkerCount) {
  const Network net = complete_graph(4);
  Rng brng(6);
  const std::vector<double> b = sample_sphere(net.num_edges(), brng);
  Rng r1(99), r2(99);
  SolveOptions one, three;
  three.workers = 3;
  const SolutionSet a = solve_all(net, b, cached_start(net), r1, one);
  const SolutionSet c = solve_all(net, b, cached_start(net), r2, three);
  EXPECT_EQ(a.nontrivial, c.nontrivial);
  EXPECT_EQ(a.nontrivial_real, c.nontrivial_real);
}

TEST(SolveAll, EqualSusceptancesOnC4AreDegenerate) {
  const Network net = cycle_graph(4);
  Rng rng(7);
  const std::vector<double> b(4, 1.0);
  const SolutionSet s = solve_all(net, b, cached_start(net), rng);
  EXPECT_TRUE(s.degenerate);
}

TEST(SolveAll, WrongParameterCountThrows) {
  const Network net = complete_graph(4);
  Rng rng(8);
  const std::vector<double> b(5, 1.0);
  EXPECT_THROW(solve_all(net, b, cached_start(net), rng), PreconditionError);
  EXPECT_THROW(solve_all(cycle_graph(4), std::vector<double>(4, 1.0), cached_start(net), rng),
               PreconditionError);
}

TEST(TotalDegree, AgreesWithMonodromyOnSmallCycles) {
  Rng rng(9);
  for (const Network& net : {cycle_graph(3), cycle_graph(4)}) {
    for (int trial = 0; trial < 4; ++trial) {
      const std::vector<double> b = testing::gaussian_vector(net.num_edges(), rng);
      const SolutionSet s = solve_all(net, b, cached_start(net), rng);
      const TotalDegreeResult td = solve_total_degree(net, b, rng);
      EXPECT_EQ(td.paths, std::size_t(1) << net.num_variables());
      EXPECT_EQ(td.solutions.size(), all_solutions(s).size());
      EXPECT_LT(set_distance(all_solutions(s), td.solutions), 1e-7);
    }
  }
}

TEST(SetDistance, KnownValues) {
  const std::vector<ComplexVector> a{{1.0}, {2.0}};
  const std::vector<ComplexVector> b{{2.0}, {1.5}, {1.0}};
  EXPECT_DOUBLE_EQ(set_distance(a, b), 0.5);
  EXPECT_DOUBLE_EQ(set_distance(a, a), 0.0);
  EXPECT_TRUE(std::isinf(set_distance(a, {})));
  EXPECT_EQ(set_distance({}, {}), 0.0);
}

TEST(ClassifyReal, SeparatesRealFromComplexPoints) {
  const Network net = cycle_graph(3);
  const PolySystem sys(net);
  const ComplexVector b{1.0, 1.0, 1.0};
  const double h = std::sqrt(3.0) / 2.0;
  const ComplexVector real_pt{-0.5, -0.5, h, -h};
  ComplexVector perturbed = real_pt;
  perturbed[2] += Complex{0.0, 1e-3};
  const auto trivial = trivial_solutions(3);
  const auto cls = classify_real(sys, b, {real_pt, perturbed, trivial[0]});
  EXPECT_TRUE(cls.real[0]);
  EXPECT_FALSE(cls.real[1]);
  EXPECT_TRUE(cls.real[2]);
  EXPECT_EQ(cls.nontrivial_count, 1u);
}

}  // namespace
}  // namespace lpf
