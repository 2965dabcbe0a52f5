#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpf/linalg.hpp"
#include "lpf/network.hpp"
#include "lpf/solver.hpp"

namespace lpf {

/// Uniform point on the unit sphere in R^dim (normalized Gaussian draw).
std::vector<double> sample_sphere(std::size_t dim, Rng& rng);

/// Seed for trial `index` of a run keyed by `base` (splitmix64 mixing).
/// Independent of scheduling, so results do not depend on worker count.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct Trial {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  std::vector<double> b;
  std::size_t real_count = 0;  // nontrivial real solutions
  double completeness = 0.0;
  bool complete = false;
  bool degenerate = false;
  std::optional<double> wall_time;

  bool included() const { return complete && !degenerate; }
};

nlohmann::json trial_to_json(const Trial& t);
Trial trial_from_json(const nlohmann::json& j);

/// Histogram of nontrivial real counts over included trials.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(double alpha = 0.01);

  void add(const Trial& t);
  void add_count(std::size_t count);
  void add_excluded() { ++excluded_; }
  void merge(const EmpiricalDistribution& other);

  const std::map<std::size_t, std::size_t>& histogram() const { return hist_; }
  std::size_t total() const { return included_ + excluded_; }
  std::size_t included() const { return included_; }
  std::size_t excluded() const { return excluded_; }
  double alpha() const { return alpha_; }
  /// DKW band half-width for the included trials.
  double epsilon() const;
  double frequency(std::size_t count) const;
  double mean() const;
  std::size_t max_count() const;

  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

 private:
  double alpha_;
  std::map<std::size_t, std::size_t> hist_;
  std::size_t included_ = 0;
  std::size_t excluded_ = 0;
};

/// sqrt(ln(2 / alpha) / (2 n)).
double dkw_epsilon(std::size_t n, double alpha);
double expected_value(const EmpiricalDistribution& dist);

struct DistributionOptions {
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;
  double alpha = 0.01;
  /// JSONL trial log; appended to and fsynced after every chunk.
  std::optional<std::filesystem::path> log_path;
  /// Continue from the trials already in log_path.
  bool resume = false;
  double max_failure_rate = 0.05;
  std::size_t chunk = 1000;
  bool record_wall_time = false;
  SolveOptions solve;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// One trial: b drawn on the sphere and solved with rng seeded from
/// derive_seed(base_seed, index).
Trial run_trial(const Network& net, const StartSet& start, std::uint64_t base_seed,
                std::uint64_t index, const SolveOptions& opts = {}, bool record_wall_time = false);

/// Runs trials [0, opts.trials). Throws SolverFailureError when more than
/// max_failure_rate of the trials are excluded.
EmpiricalDistribution run_distribution(const Network& net, const StartSet& start,
                                       const DistributionOptions& opts);

/// Reads a trial log. A malformed final line (an interrupted write) is
/// dropped, and removed from the file when `truncate_bad_tail` is set; a
/// malformed line elsewhere throws.
std::vector<Trial> read_trial_log(const std::filesystem::path& path, bool truncate_bad_tail);

/// CSV "count,occurrences,percentage".
void write_histogram_csv(std::ostream& os, const EmpiricalDistribution& dist);
nlohmann::json summary_json(const EmpiricalDistribution& dist);

}  // namespace lpf
