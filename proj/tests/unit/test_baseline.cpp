#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lpf/baseline.hpp"
#include "lpf/errors.hpp"
#include "test_support.hpp"

namespace lpf {
namespace {

// Reference values from 60-digit adaptive quadrature of the Kac integral.
struct KacCase {
  std::size_t degree;
  double expected;
};
constexpr KacCase kKacReference[] = {
    {1, 1.0},           {2, 1.29702357413},  {3, 1.49275970745},  {4, 1.64048757209},
    {12, 2.25719461636}, {14, 2.34865408981}, {28, 2.76913430632}, {54, 3.17680313522},
};

TEST(Kac, MatchesHighPrecisionQuadrature) {
  for (const auto& c : kKacReference) EXPECT_NEAR(kac_expected(c.degree), c.expected, 1e-6) << c.degree;
}

TEST(Kac, IncreasesWithDegree) {
  double prev = 0.0;
  for (std::size_t n : {2, 4, 12, 14, 28, 54, 220, 860, 3304}) {
    const double v = kac_expected(n);
    EXPECT_GT(v, prev) << n;
    prev = v;
  }
  // Asymptotically (2/pi) log N + 0.6257.
  EXPECT_NEAR(kac_expected(3304), 2.0 / std::numbers::pi * std::log(3304.0) + 0.6257, 0.01);
}

TEST(Kac, DensityKnownValues) {
  for (std::size_t n : {2, 12, 54}) {
    EXPECT_NEAR(kac_density(n, 0.0), 1.0 / std::numbers::pi, 1e-12);
    const double at_one = std::sqrt(double(n * (n + 2)) / 12.0) / std::numbers::pi;
    EXPECT_NEAR(kac_density(n, 1.0), at_one, 1e-9 * at_one);
    EXPECT_NEAR(kac_density(n, -1.0), at_one, 1e-9 * at_one);
  }
  EXPECT_NEAR(kac_density(2, 0.5), 0.348295444227652, 1e-12);
  EXPECT_NEAR(kac_density(12, 0.5), 0.424411979178763, 1e-12);
}

TEST(Kac, DensityInversionSymmetry) {
  for (std::size_t n : {3, 12, 100}) {
    for (double t : {0.2, 0.7, 0.95, 0.999, 1.3}) {
      EXPECT_NEAR(kac_density(n, 1.0 / t), t * t * kac_density(n, t), 1e-9 * kac_density(n, t));
      EXPECT_EQ(kac_density(n, -t), kac_density(n, t));
    }
  }
}

TEST(Kac, DegreeZeroIsRejected) {
  EXPECT_THROW(kac_expected(0), PreconditionError);
  EXPECT_THROW(kac_density(0, 0.5), PreconditionError);
}

TEST(Sturm, SmallPolynomials) {
  EXPECT_EQ(sturm_real_root_count(std::vector<double>{-1.0, 0.0, 1.0}), 2);
  EXPECT_EQ(sturm_real_root_count(std::vector<double>{1.0, 0.0, 1.0}), 0);
  EXPECT_EQ(sturm_real_root_count(std::vector<double>{-6.0, 11.0, -6.0, 1.0}), 3);
  EXPECT_EQ(sturm_real_root_count(std::vector<double>{0.0, -1.0, 0.0, 1.0}), 3);
  EXPECT_EQ(sturm_real_root_count(std::vector<double>{5.0}), 0);
  EXPECT_EQ(sturm_real_root_count(std::vector<double>{2.0, -4.0}), 1);
}

TEST(Sturm, RepeatedRootIsReported) {
  EXPECT_THROW(sturm_real_root_count(std::vector<double>{1.0, -2.0, 1.0}), SturmDegeneracyError);
  EXPECT_THROW(sturm_real_root_count(std::vector<double>{0.0, 0.0}), PreconditionError);
}

TEST(Sturm, AgreesWithDerivativeCascadeOracle) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const RealPolynomial p = random_polynomial(12, rng);
    EXPECT_EQ(sturm_real_root_count(p), testing::derivative_cascade_root_count(p.coefficients)) << i;
  }
  for (std::size_t n : {3, 7, 20, 40}) {
    for (int i = 0; i < 50; ++i) {
      const RealPolynomial p = random_polynomial(n, rng);
      EXPECT_EQ(sturm_real_root_count(p), testing::derivative_cascade_root_count(p.coefficients));
    }
  }
}

TEST(Sturm, ParityScalingAndPrecisionAgreement) {
  Rng rng(13);
  std::uniform_real_distribution<double> scale(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 15;
    RealPolynomial p = random_polynomial(n, rng);
    const int count = sturm_real_root_count(p);
    if (n % 2 == 1) EXPECT_EQ(count % 2, 1);
    EXPECT_LE(count, int(n));
    double s = scale(rng);
    if (std::abs(s) < 1e-3) s = 1.0;
    std::vector<double> scaled = p.coefficients;
    for (double& c : scaled) c *= s;
    EXPECT_EQ(sturm_real_root_count(scaled), count);
    EXPECT_EQ(sturm_real_root_count(p.coefficients), count);
  }
}

TEST(RandomPolynomial, LeadingCoefficientIsNonzero) {
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const RealPolynomial p = random_polynomial(6, rng);
    EXPECT_EQ(p.degree(), 6u);
    EXPECT_GE(std::abs(p.coefficients.back()), 1e-12);
  }
  const RealPolynomial q{{1.0, 2.0, 3.0}};
  EXPECT_DOUBLE_EQ(q(2.0), 17.0);
}

TEST(RandomPolyDistribution, LinearPolynomialsAlwaysHaveOneRoot) {
  const auto d = random_poly_distribution(1, 500, 3);
  EXPECT_EQ(d.histogram().size(), 1u);
  EXPECT_EQ(d.histogram().begin()->first, 1u);
}

TEST(RandomPolyDistribution, MeanWithinThreeStandardErrorsOfKac) {
  for (std::size_t n : {2, 12}) {
    const auto d = random_poly_distribution(n, 10000, 100 + n);
    double var = 0.0;
    for (const auto& [c, k] : d.histogram()) var += double(k) * std::pow(double(c) - d.mean(), 2);
    const double se = std::sqrt(var / double(d.included() - 1) / double(d.included()));
    EXPECT_LT(std::abs(d.mean() - kac_expected(n)), 3.0 * se) << n;
  }
}

TEST(RandomPolyDistribution, IndependentOfWorkerCount) {
  EXPECT_EQ(random_poly_distribution(9, 2000, 5, 1), random_poly_distribution(9, 2000, 5, 3));
}

}  // namespace
}  // namespace lpf
