#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpf/linalg.hpp"
#include "lpf/system.hpp"

namespace lpf {

struct Edge {
  std::size_t from = 0;  // from < to
  std::size_t to = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Lossless PV-bus network. Node 0 is the slack bus (x0 = 1, y0 = 0) and all
/// voltage magnitudes are normalized to 1.
///
/// Edges are stored in lexicographic order, which fixes the layout of every
/// susceptance vector used with this network.
class Network {
 public:
  /// Throws ModelError when the graph is not simple and connected, or when
  /// `injections` is neither empty nor of length n - 1.
  Network(std::size_t n, std::vector<Edge> edges, std::vector<double> injections = {});

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  /// Number of unknowns: 2(n - 1).
  std::size_t num_variables() const { return 2 * (n_ - 1); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<std::size_t> edge_index(std::size_t a, std::size_t b) const;

  /// Active power P_k for k = 1..n-1, stored at index k - 1.
  const std::vector<double>& injections() const { return injections_; }
  bool zero_injection() const;

  std::vector<std::size_t> degrees() const;
  bool is_tree() const { return edges_.size() + 1 == n_; }
  bool is_cycle() const;
  bool is_complete() const { return edges_.size() == n_ * (n_ - 1) / 2; }

  /// Two-coloring with the slack bus colored 0, if the graph is bipartite.
  std::optional<std::vector<int>> bipartition() const;

  /// Node order along the cycle starting 0 -> smaller neighbour. Requires is_cycle().
  std::vector<std::size_t> cycle_order() const;

  /// Short human-readable description, e.g. "cycle:5" or "graph:n=4,m=4".
  std::string describe() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<double> injections_;
};

Network cycle_graph(std::size_t n);
Network complete_graph(std::size_t n);
/// Throws ModelError when the edges do not form a spanning tree on 0..max.
Network tree_from_edges(std::vector<Edge> edges);

/// Power flow equations of a network, parametric in complex susceptances.
///
/// Variables are z = (x_1..x_{n-1}, y_1..y_{n-1}). Rows 0..n-2 hold the
/// circle equations x_k^2 + y_k^2 - 1 and rows n-1..2n-3 the flow equations
/// sum_m b_km (x_k y_m - x_m y_k) - P_k.
class PolySystem final : public ParametricSystem {
 public:
  explicit PolySystem(const Network& net);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_variables() const override { return 2 * (n_ - 1); }
  std::size_t num_parameters() const override { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& injections() const { return injections_; }

  void evaluate(std::span<const Complex> z, std::span<const Complex> b,
                std::span<Complex> out) const override;
  void jacobian(std::span<const Complex> z, std::span<const Complex> b,
                ComplexMatrix& out) const override;
  void parameter_derivative(std::span<const Complex> z, std::span<const Complex> b,
                            std::span<const Complex> db, std::span<Complex> out) const override;
  std::vector<int> degrees() const override;

  /// Coefficients of the flow equations as a linear map in b: row k-1 holds
  /// d(flow_k)/d(b_e), so flow = A b - P.
  ComplexMatrix flow_matrix(std::span<const Complex> z) const;

  ComplexVector residual(std::span<const Complex> z, std::span<const Complex> b) const;
  double residual_norm(std::span<const Complex> z, std::span<const Complex> b) const;

  Complex x(std::span<const Complex> z, std::size_t node) const {
    return node == 0 ? Complex{1.0, 0.0} : z[node - 1];
  }
  Complex y(std::span<const Complex> z, std::size_t node) const {
    return node == 0 ? Complex{} : z[n_ - 1 + node - 1];
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<double> injections_;
};

PolySystem build_system(const Network& net);
/// The same equations in the coordinates u_k = x_k + i y_k, v_k = x_k - i y_k:
/// circle rows u_k v_k - 1, flow rows sum_m b_km (u_m v_k - u_k v_m) / (2i) - P_k.
///
/// Solutions with large |x|, |y| have x_k ~ +-i y_k, where the circle
/// equation cancels catastrophically; in these coordinates they stay well
/// conditioned, so path tracking runs here.
class PolySystemUV final : public ParametricSystem {
 public:
  explicit PolySystemUV(const Network& net);

  std::size_t num_variables() const override { return 2 * (n_ - 1); }
  std::size_t num_parameters() const override { return edges_.size(); }

  void evaluate(std::span<const Complex> w, std::span<const Complex> b,
                std::span<Complex> out) const override;
  void jacobian(std::span<const Complex> w, std::span<const Complex> b,
                ComplexMatrix& out) const override;
  void parameter_derivative(std::span<const Complex> w, std::span<const Complex> b,
                            std::span<const Complex> db, std::span<Complex> out) const override;
  std::vector<int> degrees() const override;

 private:
  Complex u(std::span<const Complex> w, std::size_t node) const {
    return node == 0 ? Complex{1.0, 0.0} : w[node - 1];
  }
  Complex v(std::span<const Complex> w, std::size_t node) const {
    return node == 0 ? Complex{1.0, 0.0} : w[n_ - 1 + node - 1];
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<double> injections_;
  std::vector<int> degrees_;
};

/// (x, y) -> (x + i y, x - i y) and back.
ComplexVector xy_to_uv(std::span<const Complex> z);
ComplexVector uv_to_xy(std::span<const Complex> w);



ComplexVector real_to_complex(std::span<const double> v);

/// All 2^{n-1} points with y = 0 and x_k = +-1.
std::vector<ComplexVector> trivial_solutions(std::size_t n);
/// max_k |y_k| below tol and every x_k within tol of +-1.
bool is_trivial_point(std::span<const Complex> z, double tol = 1e-8);

enum class Family { Cycle, Complete, Other };

struct CountBounds {
  std::uint64_t total = 0;
  std::uint64_t nontrivial = 0;
};

/// Generic number of complex solutions: C(2n-2, n-1) for complete graphs and
/// n C(n-1, floor((n-1)/2)) for cycles. nullopt for other families.
/// Throws PreconditionError for n < 3.
std::optional<CountBounds> solution_count_bounds(Family family, std::size_t n);
Family family_of(const Network& net);

/// Number of solutions the monodromy stage must find for this network:
/// the nontrivial count when P = 0, the total count when injections are
/// present (there are no trivial solutions then). nullopt when unknown.
std::optional<std::uint64_t> expected_monodromy_count(const Network& net);

/// Finite group of coordinate sign flips that maps solutions to solutions.
///
/// Zero injection: y-negation, plus (for bipartite graphs with the slack in
/// part S) the half-turn of part T, (x_T, y_T) -> (-x_T, -y_T), and the
/// composition of the two. With injections on a bipartite graph only
/// (x_S, -y_S, -x_T, y_T) survives; otherwise the group is trivial.
class SymmetryGroup {
 public:
  static SymmetryGroup for_network(const Network& net, bool use_bipartite_action = true);
  static SymmetryGroup trivial(std::size_t num_variables);

  std::size_t order() const { return signs_.size(); }
  std::size_t num_variables() const { return dim_; }
  const std::vector<std::vector<signed char>>& elements() const { return signs_; }

  void apply(std::size_t element, std::span<const Complex> z, std::span<Complex> out) const;
  ComplexVector apply(std::size_t element, std::span<const Complex> z) const;

  /// Distinct images of z (duplicates within tol removed).
  std::vector<ComplexVector> orbit(std::span<const Complex> z, double tol = 1e-12) const;
  /// min over group elements g of |g(a) - b|_inf.
  double orbit_distance(std::span<const Complex> a, std::span<const Complex> b) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<signed char>> signs_;
};

std::vector<ComplexVector> symmetry_orbit(std::span<const Complex> point, const Network& net);

/// Checks sum_{m=0}^{2k-1} C(2k-1,m) |2+2m-2k| == 2k C(2k-1,k-1) exactly.
bool verify_binomial_identity(unsigned k);

}  // namespace lpf
