#include "lpf/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "lpf/errors.hpp"

namespace lpf {

Network::Network(std::size_t n, std::vector<Edge> edges, std::vector<double> injections)
    : n_(n), edges_(std::move(edges)), injections_(std::move(injections)) {
  if (n_ < 2) throw ModelError("network needs at least 2 nodes");
  for (Edge& e : edges_) {
    if (e.from == e.to) throw ModelError("self-loop on node " + std::to_string(e.from));
    if (e.from >= n_ || e.to >= n_) throw ModelError("edge references a node >= n");
    if (e.from > e.to) std::swap(e.from, e.to);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ModelError("duplicate edge");
  }
  if (injections_.empty()) injections_.assign(n_ - 1, 0.0);
  if (injections_.size() != n_ - 1) {
    throw ModelError("injections must have length n - 1 (nodes 1..n-1)");
  }
  for (double p : injections_) {
    if (!std::isfinite(p)) throw ModelError("non-finite injection");
  }

  // Connectivity.
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(n_, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push(v);
      }
    }
  }
  if (count != n_) throw ModelError("network graph is disconnected");
}

std::optional<std::size_t> Network::edge_index(std::size_t a, std::size_t b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Network::zero_injection() const {
  return std::all_of(injections_.begin(), injections_.end(), [](double p) { return p == 0.0; });
}

std::vector<std::size_t> Network::degrees() const {
  std::vector<std::size_t> d(n_, 0);
  for (const Edge& e : edges_) {
    ++d[e.from];
    ++d[e.to];
  }
  return d;
}

bool Network::is_cycle() const {
  if (n_ < 3 || edges_.size() != n_) return false;
  const auto d = degrees();
  return std::all_of(d.begin(), d.end(), [](std::size_t v) { return v == 2; });
}

std::optional<std::vector<int>> Network::bipartition() const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<int> color(n_, -1);
  color[0] = 0;
  std::queue<std::size_t> q;
  q.push(0);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u]) {
      if (color[v] < 0) {
        color[v] = 1 - color[u];
        q.push(v);
      } else if (color[v] == color[u]) {
        return std::nullopt;
      }
    }
  }
  return color;
}

std::vector<std::size_t> Network::cycle_order() const {
  if (!is_cycle()) throw PreconditionError("cycle_order: network is not a cycle");
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<std::size_t> order{0};
  std::size_t prev = 0;
  std::size_t cur = std::min(adj[0][0], adj[0][1]);
  while (cur != 0) {
    order.push_back(cur);
    const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  return order;
}

std::string Network::describe() const {
  std::ostringstream os;
  if (is_complete() && n_ >= 3) {
    os << "complete:" << n_;
  } else if (is_cycle()) {
    os << "cycle:" << n_;
  } else if (is_tree()) {
    os << "tree:";
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      os << (i ? "," : "") << edges_[i].from << '-' << edges_[i].to;
    }
  } else {
    os << "graph:n=" << n_ << ",m=" << edges_.size();
  }
  return os.str();
}

Network cycle_graph(std::size_t n) {
  if (n < 3) throw PreconditionError("cycle_graph requires n >= 3");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k + 1 < n; ++k) edges.push_back({k, k + 1});
  edges.push_back({0, n - 1});
  return Network(n, std::move(edges));
}

Network complete_graph(std::size_t n) {
  if (n < 3) throw PreconditionError("complete_graph requires n >= 3");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = k + 1; m < n; ++m) edges.push_back({k, m});
  }
  return Network(n, std::move(edges));
}

Network tree_from_edges(std::vector<Edge> edges) {
  if (edges.empty()) throw ModelError("tree_from_edges: empty edge list");
  std::size_t n = 0;
  for (const Edge& e : edges) n = std::max({n, e.from + 1, e.to + 1});
  if (edges.size() + 1 != n) {
    throw ModelError("tree_from_edges: a tree on " + std::to_string(n) + " nodes needs " +
                     std::to_string(n - 1) + " edges");
  }
  // The Network constructor rejects disconnected graphs; |E| = n - 1 plus
  // connectivity means the graph is a tree.
  return Network(n, std::move(edges));
}

// ---------------------------------------------------------------------------

ComplexVector real_to_complex(std::span<const double> v) {
  return ComplexVector(v.begin(), v.end());
}

std::vector<ComplexVector> trivial_solutions(std::size_t n) {
  if (n < 2) throw PreconditionError("trivial_solutions requires n >= 2");
  const std::size_t m = n - 1;
  if (m >= 63) throw PreconditionError("trivial_solutions: n too large to enumerate");
  std::vector<ComplexVector> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    ComplexVector z(2 * m);
    for (std::size_t k = 0; k < m; ++k) z[k] = (mask >> k) & 1U ? -1.0 : 1.0;
    out.push_back(std::move(z));
  }
  return out;
}

bool is_trivial_point(std::span<const Complex> z, double tol) {
  const std::size_t m = z.size() / 2;
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(z[m + k]) > tol) return false;
    if (std::min(std::abs(z[k] - 1.0), std::abs(z[k] + 1.0)) > tol) return false;
  }
  return true;
}

namespace {

__extension__ using Uint128 = unsigned __int128;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Uint128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw PreconditionError("binomial coefficient overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::optional<CountBounds> solution_count_bounds(Family family, std::size_t n) {
  if (n < 3) throw PreconditionError("solution_count_bounds requires n >= 3");
  if (n > 60) throw PreconditionError("solution_count_bounds: n too large");
  std::uint64_t total = 0;
  switch (family) {
    case Family::Complete:
      total = binomial(2 * n - 2, n - 1);
      break;
    case Family::Cycle:
      total = n * binomial(n - 1, (n - 1) / 2);
      break;
    case Family::Other:
      return std::nullopt;
  }
  return CountBounds{total, total - (std::uint64_t{1} << (n - 1))};
}

Family family_of(const Network& net) {
  if (net.num_nodes() < 3) return Family::Other;
  if (net.is_complete()) return Family::Complete;
  if (net.is_cycle()) return Family::Cycle;
  return Family::Other;
}

std::optional<std::uint64_t> expected_monodromy_count(const Network& net) {
  const Family f = family_of(net);
  if (f == Family::Other) return std::nullopt;
  const auto bounds = solution_count_bounds(f, net.num_nodes());
  if (!bounds) return std::nullopt;
  return net.zero_injection() ? bounds->nontrivial : bounds->total;
}

}  // namespace lpf
