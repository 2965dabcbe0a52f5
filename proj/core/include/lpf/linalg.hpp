#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace lpf {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Rng = std::mt19937_64;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  /// Throws PreconditionError on ragged rows or non-finite entries.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void resize(std::size_t rows, std::size_t cols);
  void set_zero();

  ComplexVector operator*(std::span<const Complex> v) const;

  // Induced norms.
  double norm_one() const;
  double norm_inf() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ComplexVector data_;
};

double norm2(std::span<const Complex> v);
double norm_inf(std::span<const Complex> v);
double distance_inf(std::span<const Complex> a, std::span<const Complex> b);

/// LU factorization with scaled partial pivoting.
///
/// A pivot is declared singular when its magnitude drops below `rel_tol`
/// times the largest entry of the original row it came from, or is zero.
class LuDecomposition {
 public:
  static constexpr double kSingularRelTol = 1e-14;

  LuDecomposition() = default;
  /// Throws SingularMatrixError.
  explicit LuDecomposition(const ComplexMatrix& a);

  /// Refactors into the existing storage. Returns false when singular.
  /// rel_tol = 0 rejects only zero or non-finite pivots, for callers that
  /// judge the result by its effect (badly column-scaled matrices are fine).
  bool try_factor(const ComplexMatrix& a, double rel_tol = kSingularRelTol);

  std::size_t size() const { return n_; }
  void solve_in_place(std::span<Complex> rhs) const;
  ComplexVector solve(std::span<const Complex> rhs) const;

  /// 1-norm condition number computed from the explicit inverse.
  /// Intended for the small systems used here (n <= ~20).
  double condition_estimate() const;

 private:
  std::size_t n_ = 0;
  ComplexMatrix lu_;
  std::vector<std::size_t> pivots_;  // row swapped with k at step k
  std::vector<double> scale_;
  double norm_one_ = 0.0;
};

/// Solves A x = rhs. Throws SingularMatrixError or PreconditionError.
ComplexVector lu_solve(const ComplexMatrix& a, std::span<const Complex> rhs);

/// 1-norm condition number of R A D, where D = diag(|x_j|) (1 for x_j = 0)
/// and R scales every row to unit max-norm. Measures sensitivity to relative
/// perturbations of x, so it does not grow with the size of x. Infinite when
/// the scaled matrix is singular.
double relative_condition(ComplexMatrix a, std::span<const Complex> x);

/// Basis of ker(A) from column-pivoted Gauss-Jordan elimination.
/// Rank is decided against `rel_tol` times the largest entry of A.
std::vector<ComplexVector> nullspace_basis(const ComplexMatrix& a, double rel_tol = 1e-12);

/// Unit-norm random point of ker(A): a standard complex Gaussian combination
/// of the kernel basis. Throws SingularMatrixError when the kernel is trivial.
ComplexVector nullspace_vector(const ComplexMatrix& a, Rng& rng);

/// One particular solution of an underdetermined (or square) system A x = rhs,
/// with free variables set to zero. Throws SingularMatrixError if inconsistent.
ComplexVector particular_solution(const ComplexMatrix& a, std::span<const Complex> rhs,
                                  double rel_tol = 1e-12);

Complex standard_complex_normal(Rng& rng);
Complex random_unit_complex(Rng& rng);

}  // namespace lpf
