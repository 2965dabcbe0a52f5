#include <algorithm>
#include <cmath>

#include "lpf/errors.hpp"
#include "lpf/system.hpp"

namespace lpf {

NewtonResult newton_refine(const ParametricSystem& system, std::span<const Complex> params,
                           std::span<const Complex> x0, const NewtonOptions& opts) {
  const std::size_t n = system.num_variables();
  if (x0.size() != n) throw PreconditionError("newton_refine: start point has wrong dimension");
  NewtonResult result;
  result.point.assign(x0.begin(), x0.end());
  ComplexVector f(n);
  ComplexMatrix jac(n, n);
  LuDecomposition lu;

  system.evaluate(result.point, params, f);
  result.residual_norm = norm2(f);
  if (opts.record_history) result.residual_history.push_back(result.residual_norm);

  for (int it = 0; it < opts.max_iter; ++it) {
    system.jacobian(result.point, params, jac);
    if (!lu.try_factor(jac, 0.0)) {
      result.singular_jacobian = true;
      return result;
    }
    for (Complex& v : f) v = -v;
    lu.solve_in_place(f);
    for (std::size_t i = 0; i < n; ++i) result.point[i] += f[i];
    result.last_step_norm = norm2(f);
    result.iterations = it + 1;

    system.evaluate(result.point, params, f);
    result.residual_norm = norm2(f);
    if (opts.record_history) result.residual_history.push_back(result.residual_norm);
    if (!std::isfinite(result.residual_norm)) return result;

    const double s = std::max(1.0, norm_inf(result.point));
    if (result.last_step_norm <= opts.tol * s && result.residual_norm <= opts.tol * s * s) {
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace lpf
