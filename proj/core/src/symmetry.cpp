#include <boost/multiprecision/cpp_int.hpp>

#include "lpf/errors.hpp"
#include "lpf/network.hpp"

namespace lpf {

SymmetryGroup SymmetryGroup::trivial(std::size_t num_variables) {
  SymmetryGroup g;
  g.dim_ = num_variables;
  g.signs_.assign(1, std::vector<signed char>(num_variables, 1));
  return g;
}

SymmetryGroup SymmetryGroup::for_network(const Network& net, bool use_bipartite_action) {
  const std::size_t m = net.num_nodes() - 1;
  SymmetryGroup g = trivial(2 * m);
  const auto colors = use_bipartite_action ? net.bipartition() : std::nullopt;

  // Sign mask from per-node multipliers on x and y.
  auto mask = [&](auto x_sign, auto y_sign) {
    std::vector<signed char> s(2 * m);
    for (std::size_t k = 1; k <= m; ++k) {
      s[k - 1] = static_cast<signed char>(x_sign(k));
      s[m + k - 1] = static_cast<signed char>(y_sign(k));
    }
    return s;
  };
  auto in_t = [&](std::size_t k) { return (*colors)[k] == 1; };

  if (net.zero_injection()) {
    g.signs_.push_back(mask([](std::size_t) { return 1; }, [](std::size_t) { return -1; }));
    if (colors) {
      // Half-turn of part T: every flow term changes sign, so F -> -F.
      g.signs_.push_back(mask([&](std::size_t k) { return in_t(k) ? -1 : 1; },
                              [&](std::size_t k) { return in_t(k) ? -1 : 1; }));
      g.signs_.push_back(mask([&](std::size_t k) { return in_t(k) ? -1 : 1; },
                              [&](std::size_t k) { return in_t(k) ? 1 : -1; }));
    }
  } else if (colors) {
    // theta_S -> -theta_S, theta_T -> pi - theta_T leaves every sin(theta_k - theta_m) fixed.
    g.signs_.push_back(mask([&](std::size_t k) { return in_t(k) ? -1 : 1; },
                            [&](std::size_t k) { return in_t(k) ? 1 : -1; }));
  }
  return g;
}

void SymmetryGroup::apply(std::size_t element, std::span<const Complex> z,
                          std::span<Complex> out) const {
  const auto& s = signs_.at(element);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = s[i] > 0 ? z[i] : -z[i];
}

ComplexVector SymmetryGroup::apply(std::size_t element, std::span<const Complex> z) const {
  if (z.size() != dim_) throw PreconditionError("SymmetryGroup::apply: dimension mismatch");
  ComplexVector out(dim_);
  apply(element, z, out);
  return out;
}

std::vector<ComplexVector> SymmetryGroup::orbit(std::span<const Complex> z, double tol) const {
  std::vector<ComplexVector> out;
  for (std::size_t g = 0; g < order(); ++g) {
    ComplexVector img = apply(g, z);
    bool dup = false;
    for (const auto& o : out) {
      if (distance_inf(o, img) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(img));
  }
  return out;
}

double SymmetryGroup::orbit_distance(std::span<const Complex> a, std::span<const Complex> b) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : signs_) {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_ && d < best; ++i) {
      const Complex ai = s[i] > 0 ? a[i] : -a[i];
      d = std::max(d, std::abs(ai - b[i]));
    }
    best = std::min(best, d);
  }
  return best;
}

std::vector<ComplexVector> symmetry_orbit(std::span<const Complex> point, const Network& net) {
  if (point.size() != net.num_variables()) {
    throw PreconditionError("symmetry_orbit: point must have 2(n-1) coordinates");
  }
  return SymmetryGroup::for_network(net).orbit(point);
}

bool verify_binomial_identity(unsigned k) {
  if (k < 1) throw PreconditionError("verify_binomial_identity requires k >= 1");
  using boost::multiprecision::cpp_int;
  const unsigned top = 2 * k - 1;
  // Row of Pascal's triangle for 2k-1, built by exact recurrence.
  std::vector<cpp_int> row(top + 1);
  row[0] = 1;
  for (unsigned m = 1; m <= top; ++m) row[m] = row[m - 1] * (top - m + 1) / m;
  cpp_int lhs = 0;
  for (unsigned m = 0; m <= top; ++m) {
    const long long w = 2LL + 2LL * m - 2LL * k;
    lhs += row[m] * (w < 0 ? -w : w);
  }
  const cpp_int rhs = cpp_int(2 * k) * row[k - 1];
  return lhs == rhs;
}

}  // namespace lpf
