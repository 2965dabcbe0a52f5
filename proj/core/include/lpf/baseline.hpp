#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lpf/distribution.hpp"
#include "lpf/errors.hpp"
#include "lpf/linalg.hpp"

namespace lpf {

/// c_0 + c_1 x + ... + c_N x^N.
struct RealPolynomial {
  std::vector<double> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  double operator()(double x) const;
};

/// Independent standard normal coefficients; redrawn until |c_N| >= 1e-12.
RealPolynomial random_polynomial(std::size_t degree, Rng& rng);

/// Density of real roots of a degree-N Gaussian polynomial at t.
double kac_density(std::size_t degree, double t);

/// Expected number of real roots, to absolute accuracy 1e-4. Throws
/// QuadratureError when the quadrature misses that accuracy.
double kac_expected(std::size_t degree);

/// Number of distinct real roots from a renormalized Sturm chain evaluated
/// at -infinity and +infinity. Throws SturmDegeneracyError when the chain
/// ends early (a repeated root to working precision).
template <class Scalar>
int sturm_real_root_count(const std::vector<Scalar>& coefficients);

int sturm_real_root_count(const RealPolynomial& p);

/// Histogram of real-root counts of `trials` Gaussian polynomials; trial i
/// draws from derive_seed(base_seed, i).
EmpiricalDistribution random_poly_distribution(std::size_t degree, std::size_t trials,
                                               std::uint64_t base_seed, std::size_t workers = 1,
                                               double alpha = 0.01);

// ---------------------------------------------------------------------------

template <class Scalar>
int sturm_real_root_count(const std::vector<Scalar>& coefficients) {
  using std::abs;
  using Poly = std::vector<Scalar>;  // ascending powers

  auto trim = [](Poly& p, Scalar threshold) {
    while (!p.empty() && abs(p.back()) <= threshold) p.pop_back();
  };
  auto normalize = [](Poly& p) {
    Scalar m = 0;
    for (const Scalar& c : p) m = std::max(m, Scalar(abs(c)));
    if (m > 0) {
      for (Scalar& c : p) c /= m;
    }
  };
  auto sign_changes = [](const std::vector<int>& signs) {
    int changes = 0;
    int prev = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  };

  Poly p0 = coefficients;
  trim(p0, Scalar(0));
  if (p0.empty()) throw PreconditionError("sturm_real_root_count: zero polynomial");
  if (p0.size() == 1) return 0;
  normalize(p0);

  Poly p1(p0.size() - 1);
  for (std::size_t i = 1; i < p0.size(); ++i) p1[i - 1] = Scalar(i) * p0[i];
  normalize(p1);

  const Scalar drop = Scalar(1e-12);
  std::vector<Poly> chain{p0, p1};
  while (chain.back().size() > 1) {
    Poly r = chain[chain.size() - 2];
    const Poly& d = chain.back();
    // r <- r mod d
    while (r.size() >= d.size()) {
      const Scalar q = r.back() / d.back();
      const std::size_t shift = r.size() - d.size();
      for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= q * d[i];
      r.pop_back();
    }
    trim(r, drop);
    if (r.empty()) {
      throw SturmDegeneracyError("Sturm chain ended at degree " +
                                 std::to_string(d.size() - 1) +
                                 "; the polynomial likely has a repeated root");
    }
    for (Scalar& c : r) c = -c;
    normalize(r);
    chain.push_back(std::move(r));
  }

  std::vector<int> at_neg;
  std::vector<int> at_pos;
  for (const Poly& p : chain) {
    const int lead = p.back() > 0 ? 1 : -1;
    at_pos.push_back(lead);
    at_neg.push_back((p.size() - 1) % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

}  // namespace lpf
