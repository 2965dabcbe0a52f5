#include "lpf/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "lpf/errors.hpp"
#include "lpf/parallel.hpp"

namespace lpf {

std::string_view to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Success:
      return "success";
    case PathStatus::Diverged:
      return "diverged";
    case PathStatus::MaxSteps:
      return "max_steps";
    case PathStatus::SingularEnd:
      return "singular_end";
    case PathStatus::StepFailure:
      return "step_failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Homotopy

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Homotopy::Homotopy(const ParametricSystem& system, Kind kind)
    : system_(&system), kind_(std::move(kind)) {
  const std::size_t np = system.num_parameters();
  std::visit(Overloaded{
                 [&](const TotalDegree& td) {
                   if (td.target_parameters.size() != np || td.degrees.size() != dimension()) {
                     throw PreconditionError("Homotopy: total-degree data has wrong size");
                   }
                 },
                 [&](const ParameterSegment& ps) {
                   if (ps.from.size() != np || ps.to.size() != np) {
                     throw PreconditionError("Homotopy: parameter vectors must have equal length");
                   }
                 }},
             kind_);
}

const ComplexVector& Homotopy::target_parameters() const {
  return std::visit(Overloaded{[](const TotalDegree& td) -> const ComplexVector& {
                                 return td.target_parameters;
                               },
                               [](const ParameterSegment& ps) -> const ComplexVector& {
                                 return ps.to;
                               }},
                    kind_);
}

void Homotopy::parameters_at(double t, std::span<Complex> out) const {
  if (const auto* ps = std::get_if<ParameterSegment>(&kind_)) {
    if (t == 0.0) {
      std::copy(ps->from.begin(), ps->from.end(), out.begin());
    } else if (t == 1.0) {
      std::copy(ps->to.begin(), ps->to.end(), out.begin());
    } else {
      const Complex a = ps->gamma1 * (1.0 - t);
      const Complex c = ps->gamma2 * t;
      const Complex inv_den = 1.0 / (a + c);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a * ps->from[i] + c * ps->to[i]) * inv_den;
    }
    return;
  }
  const auto& td = std::get<TotalDegree>(kind_);
  std::copy(td.target_parameters.begin(), td.target_parameters.end(), out.begin());
}

ComplexVector Homotopy::parameters_at(double t) const {
  ComplexVector p(system_->num_parameters());
  parameters_at(t, p);
  return p;
}

Homotopy::Workspace Homotopy::make_workspace() const {
  Workspace ws;
  ws.params.resize(system_->num_parameters());
  ws.dparams.resize(system_->num_parameters());
  ws.tmp.resize(dimension());
  ws.jac.resize(dimension(), dimension());
  return ws;
}

namespace {

// G_i = z_i^d - 1 and its derivative.
inline Complex start_value(Complex z, int d) { return std::pow(z, d) - 1.0; }
inline Complex start_derivative(Complex z, int d) {
  return d == 1 ? Complex{1.0} : static_cast<double>(d) * std::pow(z, d - 1);
}

}  // namespace

void Homotopy::evaluate(std::span<const Complex> z, double t, Workspace& ws,
                        std::span<Complex> out) const {
  parameters_at(t, ws.params);
  system_->evaluate(z, ws.params, out);
  if (const auto* td = std::get_if<TotalDegree>(&kind_)) {
    const Complex g = td->gamma * (1.0 - t);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = t * out[i] + g * start_value(z[i], td->degrees[i]);
    }
  }
}

void Homotopy::jacobian(std::span<const Complex> z, double t, Workspace& ws,
                        ComplexMatrix& out) const {
  parameters_at(t, ws.params);
  system_->jacobian(z, ws.params, out);
  if (const auto* td = std::get_if<TotalDegree>(&kind_)) {
    const std::size_t n = dimension();
    const Complex g = td->gamma * (1.0 - t);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) *= t;
      out(i, i) += g * start_derivative(z[i], td->degrees[i]);
    }
  }
}

void Homotopy::time_derivative(std::span<const Complex> z, double t, Workspace& ws,
                               std::span<Complex> out) const {
  if (const auto* td = std::get_if<TotalDegree>(&kind_)) {
    system_->evaluate(z, td->target_parameters, out);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] -= td->gamma * start_value(z[i], td->degrees[i]);
    }
    return;
  }
  const auto& ps = std::get<ParameterSegment>(kind_);
  const Complex a = ps.gamma1 * (1.0 - t);
  const Complex c = ps.gamma2 * t;
  const Complex den = a + c;
  const Complex dden = ps.gamma2 - ps.gamma1;
  const Complex inv_den2 = 1.0 / (den * den);
  for (std::size_t i = 0; i < ws.dparams.size(); ++i) {
    const Complex num = a * ps.from[i] + c * ps.to[i];
    const Complex dnum = ps.gamma2 * ps.to[i] - ps.gamma1 * ps.from[i];
    ws.dparams[i] = (dnum * den - num * dden) * inv_den2;
  }
  parameters_at(t, ws.params);
  system_->parameter_derivative(z, ws.params, ws.dparams, out);
}

ComplexVector Homotopy::evaluate(std::span<const Complex> z, double t) const {
  Workspace ws = make_workspace();
  ComplexVector out(dimension());
  evaluate(z, t, ws, out);
  return out;
}

TotalDegreeStart total_degree_start(const ParametricSystem& system,
                                    std::span<const Complex> params, Rng& rng) {
  const std::vector<int> degrees = system.degrees();
  for (int d : degrees) {
    if (d < 1) throw PreconditionError("total_degree_start: equation degrees must be positive");
  }
  Homotopy h(system, Homotopy::TotalDegree{ComplexVector(params.begin(), params.end()),
                                           random_unit_complex(rng), degrees});
  std::vector<ComplexVector> starts{ComplexVector{}};
  for (int d : degrees) {
    std::vector<ComplexVector> next;
    next.reserve(starts.size() * static_cast<std::size_t>(d));
    for (const auto& prefix : starts) {
      for (int r = 0; r < d; ++r) {
        ComplexVector z = prefix;
        z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * r / d));
        next.push_back(std::move(z));
      }
    }
    starts = std::move(next);
  }
  return {std::move(h), std::move(starts)};
}

Homotopy parameter_segment(const ParametricSystem& system, std::span<const Complex> from,
                           std::span<const Complex> to, Rng& rng) {
  const Complex g1 = random_unit_complex(rng);
  const Complex g2 = random_unit_complex(rng);
  return Homotopy(system, Homotopy::ParameterSegment{ComplexVector(from.begin(), from.end()),
                                                     ComplexVector(to.begin(), to.end()), g1, g2});
}

// ---------------------------------------------------------------------------
// Tracking

namespace {

class PathTracker {
 public:
  PathTracker(const Homotopy& h, const TrackOptions& opts)
      : h_(h),
        opts_(opts),
        n_(h.dimension()),
        ws_(h.make_workspace()),
        jac_(n_, n_),
        k1_(n_),
        k2_(n_),
        k3_(n_),
        k4_(n_),
        stage_(n_),
        rhs_(n_) {}

  PathResult run(std::span<const Complex> start) {
    PathResult res;
    ComplexVector z(start.begin(), start.end());
    ComplexVector trial(n_);
    double t = 0.0;
    double step = std::clamp(opts_.initial_step, opts_.min_step, opts_.max_step);
    int streak = 0;
    std::size_t attempts = 0;

    // Polish the start point against the t = 0 system.
    if (!correct(z, 0.0)) {
      res.status = PathStatus::StepFailure;
      res.endpoint = z;
      return res;
    }

    while (t < 1.0) {
      if (attempts++ >= opts_.max_steps) {
        res.status = PathStatus::MaxSteps;
        return finish(res, z, t);
      }
      const bool last = step >= 1.0 - t;
      const double h = last ? 1.0 - t : step;
      const double t_next = last ? 1.0 : t + h;
      bool ok = predict(z, t, h, trial) && correct(trial, t_next);
      if (ok) {
        z.swap(trial);
        t = t_next;
        ++res.steps;
        if (opts_.record_trace) {
          h_.evaluate(z, t, ws_, rhs_);
          res.trace.push_back({res.steps, t, h, norm2(rhs_), norm_inf(z)});
        }
        if (norm_inf(z) > opts_.divergence_bound) {
          res.status = PathStatus::Diverged;
          return finish(res, z, t);
        }
        if (++streak >= 4) {
          step = std::min(step * 1.5, opts_.max_step);
          streak = 0;
        }
      } else {
        ++res.rejected;
        streak = 0;
        step *= 0.5;
        if (step < opts_.min_step) {
          if (norm_inf(z) > opts_.divergence_bound) {
            res.status = PathStatus::Diverged;
            return finish(res, z, t);
          }
          if (1.0 - t <= opts_.endgame_window) return endgame(res, z, t);
          res.status = PathStatus::StepFailure;
          return finish(res, z, t);
        }
      }
    }
    return endgame(res, z, 1.0);
  }

 private:
  PathResult& finish(PathResult& res, const ComplexVector& z, double t) {
    res.endpoint = z;
    res.t_reached = t;
    h_.evaluate(z, t, ws_, rhs_);
    res.final_residual = norm2(rhs_);
    return res;
  }

  // Newton at t = 1 on the target system, then a conditioning check.
  PathResult& endgame(PathResult& res, const ComplexVector& z, double t) {
    res.t_reached = t;
    const NewtonResult nr = newton_refine(
        h_.system(), h_.target_parameters(), z,
        NewtonOptions{opts_.endgame_tol, opts_.endgame_max_iters, false});
    res.endpoint = nr.point;
    res.final_residual = nr.residual_norm;
    if (norm_inf(nr.point) > opts_.divergence_bound || !std::isfinite(nr.residual_norm)) {
      res.status = PathStatus::Diverged;
      return res;
    }
    h_.system().jacobian(nr.point, h_.target_parameters(), jac_);
    res.condition = relative_condition(jac_, nr.point);
    if (!nr.converged || res.condition > opts_.singular_condition) {
      res.status = PathStatus::SingularEnd;
      return res;
    }
    res.status = PathStatus::Success;
    return res;
  }

  // dz/dt = -H_z^{-1} H_t
  bool velocity(std::span<const Complex> z, double t, std::span<Complex> out) {
    h_.jacobian(z, t, ws_, jac_);
    if (!lu_.try_factor(jac_, 0.0)) return false;
    h_.time_derivative(z, t, ws_, out);
    for (Complex& v : out) v = -v;
    lu_.solve_in_place(out);
    return true;
  }

  bool predict(const ComplexVector& z, double t, double h, ComplexVector& out) {
    if (!velocity(z, t, k1_)) return false;
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = z[i] + 0.5 * h * k1_[i];
    if (!velocity(stage_, t + 0.5 * h, k2_)) return false;
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = z[i] + 0.5 * h * k2_[i];
    if (!velocity(stage_, t + 0.5 * h, k3_)) return false;
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = z[i] + h * k3_[i];
    if (!velocity(stage_, t + h, k4_)) return false;
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = z[i] + h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
    return std::all_of(out.begin(), out.end(),
                       [](Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
  }

  // Accepts when Newton contracts and both the step and residual reach the
  // corrector tolerance within corrector_max_iters iterations.
  bool correct(ComplexVector& z, double t) {
    double prev = 0.0;
    for (int it = 0; it < opts_.corrector_max_iters; ++it) {
      h_.evaluate(z, t, ws_, rhs_);
      h_.jacobian(z, t, ws_, jac_);
      if (!lu_.try_factor(jac_, 0.0)) return false;
      for (Complex& v : rhs_) v = -v;
      lu_.solve_in_place(rhs_);
      const double dz = norm2(rhs_);
      if (!std::isfinite(dz)) return false;
      const double scale = 1.0 + norm_inf(z);
      if (it == 0 && dz > opts_.max_first_correction * scale) return false;
      if (it > 0 && dz > 0.5 * prev) return false;
      for (std::size_t i = 0; i < n_; ++i) z[i] += rhs_[i];
      prev = dz;
      if (dz <= opts_.corrector_tol * scale) {
        h_.evaluate(z, t, ws_, rhs_);
        const double s = std::max(1.0, norm_inf(z));
        return norm2(rhs_) <= opts_.corrector_tol * s * s;
      }
    }
    return false;
  }

  const Homotopy& h_;
  const TrackOptions& opts_;
  std::size_t n_;
  Homotopy::Workspace ws_;
  ComplexMatrix jac_;
  LuDecomposition lu_;
  ComplexVector k1_, k2_, k3_, k4_, stage_, rhs_;
};

}  // namespace

PathResult track_path(const Homotopy& homotopy, std::span<const Complex> start,
                      const TrackOptions& opts) {
  if (start.size() != homotopy.dimension()) {
    throw PreconditionError("track_path: start point has wrong dimension");
  }
  if (!(opts.min_step > 0.0 && opts.min_step <= opts.max_step && opts.max_step < 1.0)) {
    throw PreconditionError("track_path: need 0 < min_step <= max_step < 1");
  }
  PathTracker tracker(homotopy, opts);
  return tracker.run(start);
}

std::vector<PathResult> track_all(const Homotopy& homotopy,
                                  const std::vector<ComplexVector>& starts,
                                  const TrackOptions& opts, std::size_t workers) {
  std::vector<PathResult> out(starts.size());
  parallel_for(starts.size(), workers,
               [&](std::size_t i) { out[i] = track_path(homotopy, starts[i], opts); });
  return out;
}

double success_fraction(const std::vector<PathResult>& results) {
  if (results.empty()) return 1.0;
  const auto ok = std::count_if(results.begin(), results.end(),
                                [](const PathResult& r) { return r.success(); });
  return static_cast<double>(ok) / static_cast<double>(results.size());
}

void write_trace_csv(std::ostream& os, const PathResult& result) {
  os << "step,t,step_size,residual,point_norm\n";
  os.precision(17);
  for (const TraceEntry& e : result.trace) {
    os << e.step << ',' << e.t << ',' << e.step_size << ',' << e.residual << ',' << e.point_norm
       << '\n';
  }
}

}  // namespace lpf
