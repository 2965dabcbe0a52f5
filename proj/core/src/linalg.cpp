#include "lpf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lpf/errors.hpp"

namespace lpf {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw PreconditionError("ComplexMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (const Complex& v : row) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw PreconditionError("ComplexMatrix::from_rows: non-finite entry");
      }
      m(i, j++) = v;
    }
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void ComplexMatrix::resize(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, Complex{});
}

void ComplexMatrix::set_zero() { std::fill(data_.begin(), data_.end(), Complex{}); }

ComplexVector ComplexMatrix::operator*(std::span<const Complex> v) const {
  if (v.size() != cols_) throw PreconditionError("ComplexMatrix: dimension mismatch in matvec");
  ComplexVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc{};
    const Complex* a = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += a[j] * v[j];
    out[i] = acc;
  }
  return out;
}

double ComplexMatrix::norm_one() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& v : data_) best = std::max(best, std::abs(v));
  return best;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double norm_inf(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s = std::max(s, std::abs(z));
  return s;
}

double distance_inf(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

// ---------------------------------------------------------------------------
// LU

LuDecomposition::LuDecomposition(const ComplexMatrix& a) {
  if (!try_factor(a)) throw SingularMatrixError("LuDecomposition: matrix is numerically singular");
}

bool LuDecomposition::try_factor(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) throw PreconditionError("LuDecomposition: matrix must be square");
  n_ = a.rows();
  lu_ = a;
  pivots_.resize(n_);
  scale_.resize(n_);
  norm_one_ = a.norm_one();
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s = std::max(s, std::abs(a(i, j)));
    if (s == 0.0) return false;
    scale_[i] = s;
  }
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t pivot = k;
    double best = -1.0;
    for (std::size_t i = k; i < n_; ++i) {
      const double v = std::abs(lu_(i, k)) / scale_[i];
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (!(best > 0.0) || best < rel_tol || !std::isfinite(best)) return false;
    pivots_[k] = pivot;
    if (pivot != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(pivot).begin());
      std::swap(scale_[k], scale_[pivot]);
    }
    const Complex inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const Complex f = lu_(i, k) * inv;
      lu_(i, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  return true;
}

void LuDecomposition::solve_in_place(std::span<Complex> rhs) const {
  if (rhs.size() != n_) throw PreconditionError("LuDecomposition::solve: dimension mismatch");
  for (std::size_t k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(rhs[k], rhs[pivots_[k]]);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    Complex acc = rhs[i];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * rhs[j];
    rhs[i] = acc;
  }
  for (std::size_t i = n_; i-- > 0;) {
    Complex acc = rhs[i];
    for (std::size_t j = i + 1; j < n_; ++j) acc -= lu_(i, j) * rhs[j];
    rhs[i] = acc / lu_(i, i);
  }
}

ComplexVector LuDecomposition::solve(std::span<const Complex> rhs) const {
  ComplexVector x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

double LuDecomposition::condition_estimate() const {
  double inv_norm = 0.0;
  ComplexVector e(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(e.begin(), e.end(), Complex{});
    e[j] = 1.0;
    solve_in_place(e);
    double col = 0.0;
    for (const Complex& v : e) col += std::abs(v);
    inv_norm = std::max(inv_norm, col);
  }
  return norm_one_ * inv_norm;
}

double relative_condition(ComplexMatrix a, std::span<const Complex> x) {
  if (a.cols() != x.size() || a.rows() != a.cols()) {
    throw PreconditionError("relative_condition: dimension mismatch");
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const double d = std::abs(x[j]);
    if (d > 0.0) {
      for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) *= d;
    }
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) /= m;
  }
  LuDecomposition lu;
  if (!lu.try_factor(a)) return std::numeric_limits<double>::infinity();
  return lu.condition_estimate();
}

ComplexVector lu_solve(const ComplexMatrix& a, std::span<const Complex> rhs) {
  if (a.rows() != rhs.size()) throw PreconditionError("lu_solve: dimension mismatch");
  return LuDecomposition(a).solve(rhs);
}

// ---------------------------------------------------------------------------
// Kernel computations

namespace {

struct Echelon {
  ComplexMatrix reduced;              // reduced row echelon form (rows permuted)
  std::vector<std::size_t> pivots;    // pivot column of each leading row
  std::vector<std::size_t> row_perm;  // original row index of each reduced row
};

// Gauss-Jordan with complete (row and column) pivoting over the remaining block.
Echelon gauss_jordan(ComplexMatrix m, double rel_tol) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double threshold = rel_tol * m.max_abs();
  Echelon out;
  out.row_perm.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.row_perm[i] = i;
  std::vector<bool> used_col(cols, false);
  std::size_t r = 0;
  while (r < rows) {
    double best = 0.0;
    std::size_t bi = r, bj = cols;
    for (std::size_t i = r; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (used_col[j]) continue;
        const double v = std::abs(m(i, j));
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bj == cols || best <= threshold || best == 0.0) break;
    if (bi != r) {
      std::swap_ranges(m.row(r).begin(), m.row(r).end(), m.row(bi).begin());
      std::swap(out.row_perm[r], out.row_perm[bi]);
    }
    const Complex inv = 1.0 / m(r, bj);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
    m(r, bj) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Complex f = m(i, bj);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
      m(i, bj) = 0.0;
    }
    used_col[bj] = true;
    out.pivots.push_back(bj);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

}  // namespace

std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& a, double rel_tol) {
  const std::size_t cols = a.cols();
  Echelon ech = gauss_jordan(a, rel_tol);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  std::vector<ComplexVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    ComplexVector v(cols);
    v[free] = 1.0;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

ComplexVector nullspace_vector(const ComplexMatrix& a, Rng& rng) {
  const auto basis = nullspace_basis(a);
  if (basis.empty()) throw SingularMatrixError("nullspace_vector: matrix has full column rank");
  ComplexVector v(a.cols());
  for (const auto& b : basis) {
    const Complex c = standard_complex_normal(rng);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * b[j];
  }
  const double nrm = norm2(v);
  if (nrm == 0.0) throw SingularMatrixError("nullspace_vector: degenerate random combination");
  for (Complex& z : v) z /= nrm;
  return v;
}

ComplexVector particular_solution(const ComplexMatrix& a, std::span<const Complex> rhs,
                                  double rel_tol) {
  if (rhs.size() != a.rows()) throw PreconditionError("particular_solution: dimension mismatch");
  // Pivot rows and columns of A give a nonsingular square block; solve on it
  // with the remaining variables fixed at zero.
  Echelon ech = gauss_jordan(a, rel_tol);
  const std::size_t rank = ech.pivots.size();
  ComplexMatrix sub(rank, rank);
  ComplexVector sub_rhs(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t orig = ech.row_perm[r];
    for (std::size_t c = 0; c < rank; ++c) sub(r, c) = a(orig, ech.pivots[c]);
    sub_rhs[r] = rhs[orig];
  }
  ComplexVector x(a.cols());
  if (rank > 0) {
    const ComplexVector xs = lu_solve(sub, sub_rhs);
    for (std::size_t c = 0; c < rank; ++c) x[ech.pivots[c]] = xs[c];
  }
  const ComplexVector check = a * x;
  double scale = norm2(rhs) + a.max_abs() * norm2(x);
  for (std::size_t i = 0; i < check.size(); ++i) {
    if (std::abs(check[i] - rhs[i]) > 1e-9 * std::max(1.0, scale)) {
      throw SingularMatrixError("particular_solution: system is inconsistent");
    }
  }
  return x;
}

Complex standard_complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::numbers::sqrt2 / 2.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Complex random_unit_complex(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

}  // namespace lpf
