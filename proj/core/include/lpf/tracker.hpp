#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "lpf/linalg.hpp"
#include "lpf/system.hpp"

namespace lpf {

struct TrackOptions {
  double initial_step = 0.05;
  double min_step = 1e-6;
  double max_step = 0.1;
  double corrector_tol = 1e-7;
  int corrector_max_iters = 3;
  /// Largest first Newton correction accepted, relative to 1 + |z|_inf.
  /// Larger corrections mean the predictor left the path's basin.
  double max_first_correction = 1e-2;
  double divergence_bound = 1e16;
  std::size_t max_steps = 10000;
  double endgame_tol = 1e-12;
  int endgame_max_iters = 20;
  /// Endpoints whose Jacobian condition number exceeds this are singular.
  double singular_condition = 1e12;
  /// A step-size underflow this close to t = 1 hands over to the endgame.
  double endgame_window = 1e-4;
  bool record_trace = false;
};

enum class PathStatus { Success, Diverged, MaxSteps, SingularEnd, StepFailure };

std::string_view to_string(PathStatus s);

struct TraceEntry {
  std::size_t step = 0;
  double t = 0.0;
  double step_size = 0.0;
  double residual = 0.0;
  double point_norm = 0.0;
};

struct PathResult {
  PathStatus status = PathStatus::StepFailure;
  ComplexVector endpoint;
  std::size_t steps = 0;     // accepted steps
  std::size_t rejected = 0;  // rejected step attempts
  double t_reached = 0.0;
  double final_residual = 0.0;
  double condition = 0.0;  // at the endpoint, when an endgame ran
  std::vector<TraceEntry> trace;

  bool success() const { return status == PathStatus::Success; }
};

/// H(z, t) between a start system at t = 0 and a target system at t = 1.
class Homotopy {
 public:
  /// gamma (1 - t) G(z) + t F(z; p), with G_i = z_i^{d_i} - 1.
  struct TotalDegree {
    ComplexVector target_parameters;
    Complex gamma;
    std::vector<int> degrees;
  };
  /// F(z; (g1 (1-t) from + g2 t to) / (t g2 + (1-t) g1)).
  struct ParameterSegment {
    ComplexVector from;
    ComplexVector to;
    Complex gamma1;
    Complex gamma2;
  };
  using Kind = std::variant<TotalDegree, ParameterSegment>;

  /// The system is referenced, not copied; it must outlive the homotopy.
  Homotopy(const ParametricSystem& system, Kind kind);

  const ParametricSystem& system() const { return *system_; }
  const Kind& kind() const { return kind_; }
  std::size_t dimension() const { return system_->num_variables(); }

  /// Parameters of F at time t (the target parameters for total degree).
  /// Exact at t = 0 and t = 1.
  void parameters_at(double t, std::span<Complex> out) const;
  ComplexVector parameters_at(double t) const;
  const ComplexVector& target_parameters() const;

  /// Scratch buffers for allocation-free evaluation; one per thread.
  struct Workspace {
    ComplexVector params;
    ComplexVector dparams;
    ComplexVector tmp;
    ComplexMatrix jac;
  };
  Workspace make_workspace() const;

  void evaluate(std::span<const Complex> z, double t, Workspace& ws,
                std::span<Complex> out) const;
  void jacobian(std::span<const Complex> z, double t, Workspace& ws, ComplexMatrix& out) const;
  void time_derivative(std::span<const Complex> z, double t, Workspace& ws,
                       std::span<Complex> out) const;

  ComplexVector evaluate(std::span<const Complex> z, double t) const;

 private:
  const ParametricSystem* system_;
  Kind kind_;
};

struct TotalDegreeStart {
  Homotopy homotopy;
  std::vector<ComplexVector> start_points;
};

/// Total-degree start system with a fresh random gamma, and all prod(d_i)
/// start points (tuples of d_i-th roots of unity).
TotalDegreeStart total_degree_start(const ParametricSystem& system,
                                    std::span<const Complex> params, Rng& rng);

/// Parameter homotopy from `from` to `to` with fresh random gamma1, gamma2.
Homotopy parameter_segment(const ParametricSystem& system, std::span<const Complex> from,
                           std::span<const Complex> to, Rng& rng);

/// RK4 predictor on dz/dt = -H_z^{-1} H_t plus Newton correction.
/// Steps halve on rejection and grow by 1.5x after 4 consecutive accepts.
PathResult track_path(const Homotopy& homotopy, std::span<const Complex> start,
                      const TrackOptions& opts = {});

/// One result per start point, in start order regardless of `workers`.
std::vector<PathResult> track_all(const Homotopy& homotopy,
                                  const std::vector<ComplexVector>& starts,
                                  const TrackOptions& opts = {}, std::size_t workers = 1);

double success_fraction(const std::vector<PathResult>& results);

/// CSV with header "step,t,step_size,residual,point_norm".
void write_trace_csv(std::ostream& os, const PathResult& result);

}  // namespace lpf
