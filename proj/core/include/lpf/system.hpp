#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpf/linalg.hpp"

namespace lpf {

/// Square polynomial system F(z; p) = 0 with complex parameters p.
///
/// Implementations are immutable and safe to share between threads.
class ParametricSystem {
 public:
  virtual ~ParametricSystem() = default;

  /// Number of variables, which is also the number of equations.
  virtual std::size_t num_variables() const = 0;
  virtual std::size_t num_parameters() const = 0;

  virtual void evaluate(std::span<const Complex> z, std::span<const Complex> p,
                        std::span<Complex> out) const = 0;
  /// Jacobian with respect to z.
  virtual void jacobian(std::span<const Complex> z, std::span<const Complex> p,
                        ComplexMatrix& out) const = 0;
  /// Directional derivative (dF/dp) * dp.
  virtual void parameter_derivative(std::span<const Complex> z, std::span<const Complex> p,
                                    std::span<const Complex> dp, std::span<Complex> out) const = 0;
  /// Total degree of each equation.
  virtual std::vector<int> degrees() const = 0;
};

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 20;
  bool record_history = false;
};

struct NewtonResult {
  ComplexVector point;
  double residual_norm = 0.0;
  double last_step_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool singular_jacobian = false;
  std::vector<double> residual_history;
};

/// Newton's method on F(.; p) started at x0.
///
/// Converged means both the residual 2-norm and the final step 2-norm are at
/// most tol * s, with s = max(1, |z|_inf) for the step and s^2 for the
/// residual (the equations are quadratic, so absolute rounding grows with |z|^2).
/// A singular Jacobian stops the iteration with converged = false.
NewtonResult newton_refine(const ParametricSystem& system, std::span<const Complex> params,
                           std::span<const Complex> x0, const NewtonOptions& opts = {});

}  // namespace lpf
