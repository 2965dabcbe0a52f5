#include <gtest/gtest.h>

#include <cmath>

#include "lpf/errors.hpp"
#include "lpf/linalg.hpp"
#include "test_support.hpp"

namespace lpf {
namespace {

using testing::random_matrix;

TEST(ComplexMatrix, FromRowsRejectsRaggedAndNonFinite) {
  EXPECT_THROW(ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}), PreconditionError);
  EXPECT_THROW(ComplexMatrix::from_rows({{1.0, std::nan("")}}), PreconditionError);
}

TEST(ComplexMatrix, NormsOfKnownMatrix) {
  const auto a = ComplexMatrix::from_rows({{1.0, -2.0}, {Complex{0.0, 3.0}, 4.0}});
  EXPECT_DOUBLE_EQ(a.norm_one(), 6.0);
  EXPECT_DOUBLE_EQ(a.norm_inf(), 7.0);
  EXPECT_DOUBLE_EQ(a.max_abs(), 4.0);
}

TEST(ComplexMatrix, MatrixVectorProduct) {
  const auto a = ComplexMatrix::from_rows({{1.0, 2.0}, {3.0, Complex{0.0, 1.0}}});
  const ComplexVector v{1.0, Complex{0.0, 1.0}};
  const ComplexVector r = a * v;
  EXPECT_NEAR(std::abs(r[0] - Complex(1.0, 2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r[1] - Complex(2.0, 0.0)), 0.0, 1e-15);
}

TEST(VectorNorms, KnownValues) {
  const ComplexVector v{Complex{3.0, 4.0}, -12.0};
  EXPECT_DOUBLE_EQ(norm2(v), 13.0);
  EXPECT_DOUBLE_EQ(norm_inf(v), 12.0);
  const ComplexVector w{Complex{3.0, 0.0}, -12.0};
  EXPECT_DOUBLE_EQ(distance_inf(v, w), 4.0);
}

TEST(LuDecomposition, SolvesTridiagonalSystem) {
  const auto a = ComplexMatrix::from_rows({{2.0, 1.0, 0.0}, {1.0, 3.0, 1.0}, {0.0, 1.0, 4.0}});
  const ComplexVector x{1.0, 2.0, 3.0};
  const ComplexVector rhs = a * x;  // (4, 10, 14)
  EXPECT_NEAR(std::abs(rhs[1] - 10.0), 0.0, 1e-15);
  const ComplexVector got = lu_solve(a, rhs);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(got[i] - x[i]), 0.0, 1e-14);
}

TEST(LuDecomposition, NeedsPivotingForZeroLeadingEntry) {
  const auto a = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const ComplexVector got = lu_solve(a, ComplexVector{2.0, 5.0});
  EXPECT_NEAR(std::abs(got[0] - 5.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(got[1] - 2.0), 0.0, 1e-15);
}

TEST(LuDecomposition, SingularMatrixIsRejected) {
  const auto a = ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  EXPECT_THROW(LuDecomposition{a}, SingularMatrixError);
  LuDecomposition lu;
  EXPECT_FALSE(lu.try_factor(a));
  EXPECT_FALSE(lu.try_factor(ComplexMatrix(2, 2), 0.0));
}

TEST(LuDecomposition, ZeroToleranceAcceptsTinyButNonzeroPivot) {
  const double d = std::ldexp(1.0, -50);
  const auto a = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0 + d}});
  LuDecomposition lu;
  EXPECT_FALSE(lu.try_factor(a));
  ASSERT_TRUE(lu.try_factor(a, 0.0));
  const ComplexVector x = lu.solve(ComplexVector{2.0, 2.0 + d});
  EXPECT_EQ(x[0], Complex(1.0));
  EXPECT_EQ(x[1], Complex(1.0));
}

TEST(LuDecomposition, NonSquareAndMismatchedRhsThrow) {
  EXPECT_THROW(LuDecomposition{ComplexMatrix(2, 3)}, PreconditionError);
  EXPECT_THROW(lu_solve(ComplexMatrix::identity(2), ComplexVector{1.0}), PreconditionError);
}

TEST(LuDecomposition, ConditionOfDiagonalMatrix) {
  auto a = ComplexMatrix::identity(3);
  EXPECT_NEAR(LuDecomposition(a).condition_estimate(), 1.0, 1e-14);
  a(2, 2) = 1e-3;
  EXPECT_NEAR(LuDecomposition(a).condition_estimate(), 1e3, 1e-9);
}

TEST(LuDecomposition, RandomSystemsHaveSmallBackwardError) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const ComplexMatrix a = random_matrix(n, n, rng);
    const ComplexVector x = testing::complex_gaussian_vector(n, rng);
    const ComplexVector got = lu_solve(a, a * x);
    const ComplexVector r = a * got;
    const ComplexVector b = a * x;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(r[i] - b[i]));
    EXPECT_LT(err, 1e-12 * (1.0 + a.norm_inf() * norm_inf(got)));
  }
}

TEST(RelativeCondition, InvariantUnderColumnScalingOfTheSolution) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(5, 5, rng);
    ComplexVector x = testing::complex_gaussian_vector(5, rng);
    const double base = relative_condition(a, x);
    ComplexMatrix scaled = a;
    ComplexVector sx = x;
    for (std::size_t j = 0; j < 5; ++j) {
      const double s = std::pow(10.0, double(j) * 2.0 - 4.0);
      for (std::size_t r = 0; r < 5; ++r) scaled(r, j) /= s;
      sx[j] *= s;
    }
    EXPECT_NEAR(relative_condition(scaled, sx) / base, 1.0, 1e-8);
  }
}

TEST(RelativeCondition, InfiniteForSingularMatrix) {
  const auto a = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
  EXPECT_TRUE(std::isinf(relative_condition(a, ComplexVector{1.0, 1.0})));
}

TEST(Nullspace, BasisSpansKernelOfRankDeficientMatrix) {
  Rng rng(5);
  const ComplexMatrix b = random_matrix(2, 5, rng);
  ComplexMatrix a(3, 5);
  for (std::size_t c = 0; c < 5; ++c) {
    a(0, c) = b(0, c);
    a(1, c) = b(1, c);
    a(2, c) = 2.0 * b(0, c) - b(1, c);
  }
  const auto basis = nullspace_basis(a);
  ASSERT_EQ(basis.size(), 3u);
  for (const auto& v : basis) EXPECT_LT(norm_inf(a * v), 1e-12 * (1.0 + norm_inf(v)));
  const ComplexVector r = nullspace_vector(a, rng);
  EXPECT_NEAR(norm2(r), 1.0, 1e-12);
  EXPECT_LT(norm_inf(a * r), 1e-12);
}

TEST(Nullspace, TrivialKernelThrows) {
  Rng rng(1);
  EXPECT_TRUE(nullspace_basis(ComplexMatrix::identity(3)).empty());
  EXPECT_THROW(nullspace_vector(ComplexMatrix::identity(3), rng), SingularMatrixError);
}

TEST(ParticularSolution, SolvesUnderdeterminedSystem) {
  Rng rng(9);
  const ComplexMatrix a = random_matrix(2, 4, rng);
  const ComplexVector rhs{1.0, Complex{0.0, -2.0}};
  const ComplexVector x = particular_solution(a, rhs);
  const ComplexVector r = a * x;
  EXPECT_LT(std::abs(r[0] - rhs[0]) + std::abs(r[1] - rhs[1]), 1e-12);
}

TEST(ParticularSolution, InconsistentSystemThrows) {
  const auto a = ComplexMatrix::from_rows({{1.0, 1.0}, {2.0, 2.0}});
  EXPECT_THROW(particular_solution(a, ComplexVector{1.0, 3.0}), SingularMatrixError);
}

TEST(RandomComplex, UnitComplexHasUnitModulus) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(std::abs(random_unit_complex(rng)), 1.0, 1e-15);
}

}  // namespace
}  // namespace lpf
