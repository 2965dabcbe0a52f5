#include "lpf/baseline.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <numbers>
#include <random>

#include "lpf/parallel.hpp"

namespace lpf {

double RealPolynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * x + *it;
  return v;
}

RealPolynomial random_polynomial(std::size_t degree, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealPolynomial p;
  p.coefficients.resize(degree + 1);
  for (double& c : p.coefficients) c = normal(rng);
  while (std::abs(p.coefficients.back()) < 1e-12) p.coefficients.back() = normal(rng);
  return p;
}

namespace {

// sqrt(A C - B^2) / (pi A) with A = sum t^{2i}, B = sum i t^{2i-1},
// C = sum i^2 t^{2i-2}; regular at t = 1.
long double density_sum_form(std::size_t degree, long double t) {
  long double a = 0.0L;
  long double b = 0.0L;
  long double c = 0.0L;
  long double pw = 1.0L;  // t^{2i-2}
  for (std::size_t i = 0; i <= degree; ++i) {
    const long double li = static_cast<long double>(i);
    if (i == 0) {
      a += 1.0L;
    } else {
      a += pw * t * t;
      b += li * pw * t;
      c += li * li * pw;
      pw *= t * t;
    }
  }
  const long double disc = std::max(0.0L, a * c - b * b);
  return std::sqrt(disc) / (std::numbers::pi_v<long double> * a);
}

}  // namespace

double kac_density(std::size_t degree, double t) {
  if (degree == 0) throw PreconditionError("kac_density: degree must be positive");
  const long double lt = std::abs(static_cast<long double>(t));
  const long double n1 = static_cast<long double>(degree + 1);
  if (std::abs(1.0L - lt) < 10.0L / n1) return static_cast<double>(density_sum_form(degree, lt));
  if (lt > 1.0L) {
    // t -> 1/t symmetry: rho(t) = rho(1/t) / t^2
    const long double u = 1.0L / lt;
    return static_cast<double>(static_cast<long double>(kac_density(degree, static_cast<double>(u))) * u * u);
  }
  const long double t2 = lt * lt;
  const long double first = 1.0L / ((t2 - 1.0L) * (t2 - 1.0L));
  const long double tn = std::pow(lt, static_cast<long double>(2 * degree));
  const long double den = tn * t2 - 1.0L;
  const long double second = n1 * n1 * tn / (den * den);
  return static_cast<double>(std::sqrt(std::max(0.0L, first - second)) /
                             std::numbers::pi_v<long double>);
}

double kac_expected(std::size_t degree) {
  if (degree == 0) throw PreconditionError("kac_expected: degree must be positive");
  using boost::math::quadrature::gauss_kronrod;
  auto f = [degree](double t) { return kac_density(degree, t); };
  // Most of the mass sits within a few 1/N of t = 1.
  const double split = std::max(0.0, 1.0 - 10.0 / static_cast<double>(degree + 1));
  double err_a = 0.0;
  double err_b = 0.0;
  const double ia = split > 0.0 ? gauss_kronrod<double, 61>::integrate(f, 0.0, split, 10, 1e-9, &err_a) : 0.0;
  const double ib = gauss_kronrod<double, 61>::integrate(f, split, 1.0, 10, 1e-9, &err_b);
  const double achieved = 4.0 * (err_a + err_b);
  if (!(achieved <= 1e-4)) {
    throw QuadratureError("kac_expected: quadrature did not reach 1e-4", achieved);
  }
  return 4.0 * (ia + ib);
}

int sturm_real_root_count(const RealPolynomial& p) {
  std::vector<long double> c(p.coefficients.begin(), p.coefficients.end());
  return sturm_real_root_count<long double>(c);
}

EmpiricalDistribution random_poly_distribution(std::size_t degree, std::size_t trials,
                                               std::uint64_t base_seed, std::size_t workers,
                                               double alpha) {
  if (degree == 0) throw PreconditionError("random_poly_distribution: degree must be positive");
  std::vector<int> counts(trials, -1);
  parallel_for(trials, workers, [&](std::size_t i) {
    Rng rng(derive_seed(base_seed, i));
    for (int attempt = 0; attempt < 10; ++attempt) {
      try {
        counts[i] = sturm_real_root_count(random_polynomial(degree, rng));
        return;
      } catch (const SturmDegeneracyError&) {
      }
    }
    throw SturmDegeneracyError("random_poly_distribution: repeated Sturm degeneracy at trial " +
                               std::to_string(i));
  });
  EmpiricalDistribution dist(alpha);
  for (int c : counts) dist.add_count(static_cast<std::size_t>(c));
  return dist;
}

}  // namespace lpf
