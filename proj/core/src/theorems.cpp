#include "lpf/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lpf/distribution.hpp"
#include "lpf/errors.hpp"

namespace lpf {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexVector point_from_angles(const std::vector<double>& theta) {
  const std::size_t m = theta.size() - 1;
  ComplexVector z(2 * m);
  for (std::size_t k = 1; k <= m; ++k) {
    z[k - 1] = std::cos(theta[k]);
    z[m + k - 1] = std::sin(theta[k]);
  }
  return z;
}

// theta[0] = 0, theta[1] = pi, remaining nodes in antipodal pairs with a free
// angle; for odd n, nodes 2, 3, 4 form an equilateral triangle.
std::vector<double> complete_family_angles(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<double> theta(n, 0.0);
  theta[1] = kPi;
  std::size_t k = 2;
  if (n % 2 == 1) {
    const double a = angle(rng);
    theta[3] = a;
    theta[2] = a + 2.0 * kPi / 3.0;
    theta[4] = a - 2.0 * kPi / 3.0;
    k = 5;
  }
  for (; k + 1 < n; k += 2) {
    theta[k] = angle(rng);
    theta[k + 1] = theta[k] + kPi;
  }
  return theta;
}

// Consecutive angle differences along the cycle are pi u or pi (1 - u), half
// of each.
std::vector<double> cycle_family_angles(const Network& net, Rng& rng) {
  const std::size_t n = net.num_nodes();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  std::vector<double> steps(n);
  for (std::size_t j = 0; j < n; ++j) steps[j] = j < n / 2 ? u : 1.0 - u;
  std::shuffle(steps.begin(), steps.end(), rng);
  const auto order = net.cycle_order();
  std::vector<double> theta(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) theta[order[j]] = theta[order[j - 1]] + kPi * steps[j - 1];
  return theta;
}

}  // namespace

std::vector<ComplexVector> infinite_family_samples(const Network& net, std::size_t count,
                                                   Rng& rng) {
  const std::size_t n = net.num_nodes();
  const bool complete = net.is_complete() && n >= 4;
  const bool cycle = net.is_cycle() && n % 4 == 0;
  if (!complete && !cycle) {
    throw PreconditionError("no infinite solution family is known for " + net.describe());
  }
  if (!net.zero_injection()) {
    throw PreconditionError("infinite solution families require zero injection");
  }
  std::vector<ComplexVector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    out.push_back(point_from_angles(complete ? complete_family_angles(n, rng)
                                             : cycle_family_angles(net, rng)));
  }
  return out;
}

FamilyCheck verify_infinite_family(const Network& net, std::span<const double> b, Rng& rng,
                                   std::size_t samples, double tol) {
  if (b.size() != net.num_edges()) {
    throw PreconditionError("verify_infinite_family: susceptance vector has wrong length");
  }
  const PolySystem sys = build_system(net);
  const ComplexVector params = real_to_complex(b);
  FamilyCheck out;
  out.samples = samples;
  for (const auto& z : infinite_family_samples(net, samples, rng)) {
    out.max_residual = std::max(out.max_residual, sys.residual_norm(z, params));
  }
  out.holds = out.max_residual < tol;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct AngleSystem {
  std::size_t n;
  std::vector<Edge> edges;
  std::vector<double> b;

  // f_k = sum_m b_km sin(theta_m - theta_k), k = 1..n-1.
  void eval(const std::vector<double>& th, std::vector<double>& f, ComplexMatrix& j) const {
    std::fill(f.begin(), f.end(), 0.0);
    j.set_zero();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::size_t a = edges[e].from;
      const std::size_t c = edges[e].to;
      const double s = b[e] * std::sin(th[c] - th[a]);
      const double co = b[e] * std::cos(th[c] - th[a]);
      if (a > 0) {
        f[a - 1] += s;
        j(a - 1, a - 1) -= co;
        if (c > 0) j(a - 1, c - 1) += co;
      }
      if (c > 0) {
        f[c - 1] -= s;
        j(c - 1, c - 1) -= co;
        if (a > 0) j(c - 1, a - 1) += co;
      }
    }
  }
};

double wrap(double t) {
  t = std::fmod(t, 2.0 * kPi);
  return t < 0.0 ? t + 2.0 * kPi : t;
}

double circular_distance(const std::vector<double>& a, const std::vector<double>& c) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = std::abs(a[k] - c[k]);
    d = std::max(d, std::min(x, 2.0 * kPi - x));
  }
  return d;
}

}  // namespace

std::size_t angle_grid_nontrivial_count(const Network& net, std::span<const double> b,
                                        std::size_t grid_per_dim) {
  if (b.size() != net.num_edges()) {
    throw PreconditionError("angle_grid_nontrivial_count: susceptance vector has wrong length");
  }
  if (grid_per_dim == 0) throw PreconditionError("grid resolution must be positive");
  const std::size_t n = net.num_nodes();
  const std::size_t m = n - 1;
  const AngleSystem sys{n, net.edges(), std::vector<double>(b.begin(), b.end())};

  std::size_t cells = 1;
  for (std::size_t k = 0; k < m; ++k) cells *= grid_per_dim;

  std::vector<std::vector<double>> found;
  std::vector<double> th(n, 0.0);
  std::vector<double> f(m);
  ComplexVector rhs(m);
  ComplexMatrix jac(m, m);
  LuDecomposition lu;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t c = cell;
    for (std::size_t k = 1; k <= m; ++k) {
      th[k] = 2.0 * kPi * static_cast<double>(c % grid_per_dim) / static_cast<double>(grid_per_dim);
      c /= grid_per_dim;
    }
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      sys.eval(th, f, jac);
      double res = 0.0;
      for (double v : f) res = std::max(res, std::abs(v));
      if (res < 1e-12) {
        converged = true;
        break;
      }
      if (!lu.try_factor(jac)) break;
      for (std::size_t k = 0; k < m; ++k) rhs[k] = -f[k];
      lu.solve_in_place(rhs);
      for (std::size_t k = 0; k < m; ++k) th[k + 1] += rhs[k].real();
    }
    if (!converged) continue;
    std::vector<double> w(m);
    bool nontrivial = false;
    for (std::size_t k = 0; k < m; ++k) {
      w[k] = wrap(th[k + 1]);
      nontrivial = nontrivial || std::abs(std::sin(w[k])) > 1e-6;
    }
    if (!nontrivial) continue;
    const bool known = std::any_of(found.begin(), found.end(), [&](const auto& p) {
      return circular_distance(p, w) < 1e-6;
    });
    if (!known) found.push_back(std::move(w));
  }
  return found.size();
}

TreeCheck check_tree_trivial(const Network& net, std::size_t trials, Rng& rng,
                             std::size_t grid_per_dim) {
  if (!net.is_tree()) throw PreconditionError("check_tree_trivial: " + net.describe() + " is not a tree");
  TreeCheck out;
  out.holds = true;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto b = sample_sphere(net.num_edges(), rng);
    out.counts.push_back(angle_grid_nontrivial_count(net, b, grid_per_dim));
    out.holds = out.holds && out.counts.back() == 0;
  }
  return out;
}

MaxRealConstruction max_real_construction(std::size_t n) {
  if (n < 3) throw PreconditionError("max_real_construction requires n >= 3");
  const Network net = cycle_graph(n);
  MaxRealConstruction out;
  out.b.assign(net.num_edges(), 1.0);
  if (n % 4 == 0) out.b[*net.edge_index(0, 1)] = -1.0;
  out.expected_real_total = solution_count_bounds(Family::Cycle, n)->total;
  return out;
}

}  // namespace lpf
