#include <cmath>

#include "lpf/errors.hpp"
#include "lpf/network.hpp"

namespace lpf {

PolySystem::PolySystem(const Network& net)
    : n_(net.num_nodes()), edges_(net.edges()), injections_(net.injections()) {}

PolySystem build_system(const Network& net) { return PolySystem(net); }

void PolySystem::evaluate(std::span<const Complex> z, std::span<const Complex> b,
                          std::span<Complex> out) const {
  const std::size_t m = n_ - 1;
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = z[k] * z[k] + z[m + k] * z[m + k] - 1.0;
    out[m + k] = -injections_[k];
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t k = edges_[e].from;
    const std::size_t j = edges_[e].to;
    const Complex term = b[e] * (x(z, k) * y(z, j) - x(z, j) * y(z, k));
    if (k != 0) out[m + k - 1] += term;
    out[m + j - 1] -= term;
  }
}

void PolySystem::jacobian(std::span<const Complex> z, std::span<const Complex> b,
                          ComplexMatrix& out) const {
  const std::size_t m = n_ - 1;
  if (out.rows() != 2 * m || out.cols() != 2 * m) {
    out.resize(2 * m, 2 * m);
  } else {
    out.set_zero();
  }
  for (std::size_t k = 0; k < m; ++k) {
    out(k, k) = 2.0 * z[k];
    out(k, m + k) = 2.0 * z[m + k];
  }
  // Row of node a for the term b (x_a y_c - x_c y_a).
  auto add_term = [&](std::size_t a, std::size_t c, Complex be) {
    if (a == 0) return;
    const std::size_t row = m + a - 1;
    out(row, a - 1) += be * y(z, c);
    out(row, m + a - 1) -= be * x(z, c);
    if (c != 0) {
      out(row, c - 1) -= be * y(z, a);
      out(row, m + c - 1) += be * x(z, a);
    }
  };
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    add_term(edges_[e].from, edges_[e].to, b[e]);
    add_term(edges_[e].to, edges_[e].from, b[e]);
  }
}

void PolySystem::parameter_derivative(std::span<const Complex> z, std::span<const Complex>,
                                      std::span<const Complex> db, std::span<Complex> out) const {
  const std::size_t m = n_ - 1;
  for (std::size_t i = 0; i < 2 * m; ++i) out[i] = 0.0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t k = edges_[e].from;
    const std::size_t j = edges_[e].to;
    const Complex term = db[e] * (x(z, k) * y(z, j) - x(z, j) * y(z, k));
    if (k != 0) out[m + k - 1] += term;
    out[m + j - 1] -= term;
  }
}

std::vector<int> PolySystem::degrees() const {
  const std::size_t m = n_ - 1;
  std::vector<int> d(2 * m, 2);
  std::vector<bool> has_quadratic(n_, false);
  for (const Edge& e : edges_) {
    if (e.from != 0) {
      has_quadratic[e.from] = true;
      has_quadratic[e.to] = true;
    }
  }
  for (std::size_t k = 1; k < n_; ++k) {
    if (!has_quadratic[k]) d[m + k - 1] = 1;
  }
  return d;
}

ComplexMatrix PolySystem::flow_matrix(std::span<const Complex> z) const {
  const std::size_t m = n_ - 1;
  ComplexMatrix a(m, edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t k = edges_[e].from;
    const std::size_t j = edges_[e].to;
    const Complex coef = x(z, k) * y(z, j) - x(z, j) * y(z, k);
    if (k != 0) a(k - 1, e) += coef;
    a(j - 1, e) -= coef;
  }
  return a;
}

ComplexVector PolySystem::residual(std::span<const Complex> z, std::span<const Complex> b) const {
  if (z.size() != num_variables() || b.size() != num_parameters()) {
    throw PreconditionError("PolySystem::residual: dimension mismatch");
  }
  ComplexVector out(num_variables());
  evaluate(z, b, out);
  return out;
}

double PolySystem::residual_norm(std::span<const Complex> z, std::span<const Complex> b) const {
  return norm2(residual(z, b));
}

// ---------------------------------------------------------------------------

PolySystemUV::PolySystemUV(const Network& net)
    : n_(net.num_nodes()),
      edges_(net.edges()),
      injections_(net.injections()),
      degrees_(PolySystem(net).degrees()) {}

void PolySystemUV::evaluate(std::span<const Complex> w, std::span<const Complex> b,
                            std::span<Complex> out) const {
  const std::size_t m = n_ - 1;
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = w[k] * w[m + k] - 1.0;
    out[m + k] = -injections_[k];
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t k = edges_[e].from;
    const std::size_t j = edges_[e].to;
    const Complex term = b[e] * Complex{0.0, -0.5} * (u(w, j) * v(w, k) - u(w, k) * v(w, j));
    if (k != 0) out[m + k - 1] += term;
    out[m + j - 1] -= term;
  }
}

void PolySystemUV::jacobian(std::span<const Complex> w, std::span<const Complex> b,
                            ComplexMatrix& out) const {
  const std::size_t m = n_ - 1;
  if (out.rows() != 2 * m || out.cols() != 2 * m) {
    out.resize(2 * m, 2 * m);
  } else {
    out.set_zero();
  }
  for (std::size_t k = 0; k < m; ++k) {
    out(k, k) = w[m + k];
    out(k, m + k) = w[k];
  }
  // Row of node a for the term c (u_c v_a - u_a v_c).
  auto add_term = [&](std::size_t a, std::size_t c, Complex ce) {
    if (a == 0) return;
    const std::size_t row = m + a - 1;
    out(row, a - 1) -= ce * v(w, c);
    out(row, m + a - 1) += ce * u(w, c);
    if (c != 0) {
      out(row, c - 1) += ce * v(w, a);
      out(row, m + c - 1) -= ce * u(w, a);
    }
  };
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Complex ce = b[e] * Complex{0.0, -0.5};
    add_term(edges_[e].from, edges_[e].to, ce);
    add_term(edges_[e].to, edges_[e].from, ce);
  }
}

void PolySystemUV::parameter_derivative(std::span<const Complex> w, std::span<const Complex>,
                                        std::span<const Complex> db,
                                        std::span<Complex> out) const {
  const std::size_t m = n_ - 1;
  for (std::size_t i = 0; i < 2 * m; ++i) out[i] = 0.0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t k = edges_[e].from;
    const std::size_t j = edges_[e].to;
    const Complex term = db[e] * Complex{0.0, -0.5} * (u(w, j) * v(w, k) - u(w, k) * v(w, j));
    if (k != 0) out[m + k - 1] += term;
    out[m + j - 1] -= term;
  }
}

std::vector<int> PolySystemUV::degrees() const { return degrees_; }

ComplexVector xy_to_uv(std::span<const Complex> z) {
  const std::size_t m = z.size() / 2;
  ComplexVector w(z.size());
  const Complex i{0.0, 1.0};
  for (std::size_t k = 0; k < m; ++k) {
    w[k] = z[k] + i * z[m + k];
    w[m + k] = z[k] - i * z[m + k];
  }
  return w;
}

ComplexVector uv_to_xy(std::span<const Complex> w) {
  const std::size_t m = w.size() / 2;
  ComplexVector z(w.size());
  for (std::size_t k = 0; k < m; ++k) {
    z[k] = 0.5 * (w[k] + w[m + k]);
    z[m + k] = Complex{0.0, -0.5} * (w[k] - w[m + k]);
  }
  return z;
}

}  // namespace lpf
