#include "lpf/distribution.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "lpf/errors.hpp"
#include "lpf/parallel.hpp"

namespace lpf {

std::vector<double> sample_sphere(std::size_t dim, Rng& rng) {
  if (dim == 0) throw PreconditionError("sample_sphere: dim must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  for (;;) {
    double s = 0.0;
    for (double& x : v) {
      x = normal(rng);
      s += x * x;
    }
    if (s > 0.0 && std::isfinite(s)) {
      const double inv = 1.0 / std::sqrt(s);
      for (double& x : v) x *= inv;
      return v;
    }
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

nlohmann::json trial_to_json(const Trial& t) {
  nlohmann::json j;
  j["index"] = t.index;
  j["seed"] = t.seed;
  j["b"] = t.b;
  j["real_count"] = t.real_count;
  j["completeness"] = t.completeness;
  j["complete"] = t.complete;
  j["degenerate"] = t.degenerate;
  if (t.wall_time) j["wall_time"] = *t.wall_time;
  return j;
}

Trial trial_from_json(const nlohmann::json& j) {
  Trial t;
  t.index = j.at("index").get<std::uint64_t>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.b = j.at("b").get<std::vector<double>>();
  t.real_count = j.at("real_count").get<std::size_t>();
  t.completeness = j.at("completeness").get<double>();
  t.complete = j.at("complete").get<bool>();
  t.degenerate = j.at("degenerate").get<bool>();
  if (j.contains("wall_time")) t.wall_time = j["wall_time"].get<double>();
  return t;
}

// ---------------------------------------------------------------------------

EmpiricalDistribution::EmpiricalDistribution(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0, 1)");
}

void EmpiricalDistribution::add(const Trial& t) {
  if (t.included()) {
    add_count(t.real_count);
  } else {
    add_excluded();
  }
}

void EmpiricalDistribution::add_count(std::size_t count) {
  ++hist_[count];
  ++included_;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
  for (const auto& [c, k] : other.hist_) hist_[c] += k;
  included_ += other.included_;
  excluded_ += other.excluded_;
}

double EmpiricalDistribution::epsilon() const { return dkw_epsilon(included_, alpha_); }

double EmpiricalDistribution::frequency(std::size_t count) const {
  if (included_ == 0) return 0.0;
  const auto it = hist_.find(count);
  return it == hist_.end() ? 0.0
                           : static_cast<double>(it->second) / static_cast<double>(included_);
}

double EmpiricalDistribution::mean() const { return expected_value(*this); }

std::size_t EmpiricalDistribution::max_count() const {
  return hist_.empty() ? 0 : hist_.rbegin()->first;
}

double dkw_epsilon(std::size_t n, double alpha) {
  if (n == 0) throw PreconditionError("dkw_epsilon: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("dkw_epsilon: alpha must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double expected_value(const EmpiricalDistribution& dist) {
  if (dist.included() == 0) throw PreconditionError("expected_value: empty distribution");
  double s = 0.0;
  for (const auto& [c, k] : dist.histogram()) s += static_cast<double>(c) * static_cast<double>(k);
  return s / static_cast<double>(dist.included());
}

// ---------------------------------------------------------------------------

Trial run_trial(const Network& net, const StartSet& start, std::uint64_t base_seed,
                std::uint64_t index, const SolveOptions& opts, bool record_wall_time) {
  const auto t0 = std::chrono::steady_clock::now();
  Trial t;
  t.index = index;
  t.seed = derive_seed(base_seed, index);
  Rng rng(t.seed);
  t.b = sample_sphere(net.num_edges(), rng);
  const SolutionSet s = solve_all(net, t.b, start, rng, opts);
  t.real_count = s.real_nontrivial_count();
  t.completeness = s.completeness();
  t.complete = s.complete;
  t.degenerate = s.degenerate;
  if (record_wall_time) {
    t.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return t;
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void append_and_sync(std::FILE* f, const std::vector<Trial>& trials) {
  for (const Trial& t : trials) {
    const std::string line = trial_to_json(t).dump() + "\n";
    if (std::fwrite(line.data(), 1, line.size(), f) != line.size()) {
      throw Error("failed to write the trial log");
    }
  }
  if (std::fflush(f) != 0 || ::fsync(::fileno(f)) != 0) throw Error("failed to sync the trial log");
}

}  // namespace

std::vector<Trial> read_trial_log(const std::filesystem::path& path, bool truncate_bad_tail) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open trial log " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  in.close();
  const std::string data = buf.str();

  std::vector<Trial> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    ++line_no;
    const std::size_t eol = data.find('\n', pos);
    // A line without its newline is an interrupted write.
    if (eol == std::string::npos) break;
    const std::string_view line(data.data() + pos, eol - pos);
    if (!line.empty()) {
      try {
        out.push_back(trial_from_json(nlohmann::json::parse(line)));
      } catch (const std::exception& e) {
        if (eol + 1 < data.size()) {
          throw Error("malformed trial log line " + std::to_string(line_no) + " in " +
                      path.string() + ": " + e.what());
        }
        break;
      }
    }
    pos = eol + 1;
  }
  if (pos < data.size() && truncate_bad_tail) std::filesystem::resize_file(path, pos);
  return out;
}

EmpiricalDistribution run_distribution(const Network& net, const StartSet& start,
                                       const DistributionOptions& opts) {
  start.check_matches(net);
  if (!start.complete) throw PreconditionError("run_distribution: start set is incomplete");
  if (opts.chunk == 0) throw PreconditionError("run_distribution: chunk must be positive");
  EmpiricalDistribution dist(opts.alpha);

  std::size_t next = 0;
  FilePtr log;
  if (opts.log_path) {
    if (opts.resume && std::filesystem::exists(*opts.log_path)) {
      const auto previous = read_trial_log(*opts.log_path, true);
      for (const Trial& t : previous) {
        if (t.index != next) {
          throw Error("trial log is not a contiguous prefix at index " + std::to_string(next));
        }
        if (t.seed != derive_seed(opts.base_seed, t.index)) {
          throw Error("trial log was written with a different base seed");
        }
        if (next >= opts.trials) break;
        dist.add(t);
        ++next;
      }
      log.reset(std::fopen(opts.log_path->c_str(), "ab"));
    } else {
      log.reset(std::fopen(opts.log_path->c_str(), "wb"));
    }
    if (!log) throw Error("cannot open trial log " + opts.log_path->string());
  } else if (opts.resume) {
    throw PreconditionError("run_distribution: resume requires a log path");
  }

  SolveOptions solve = opts.solve;
  solve.workers = 1;
  std::vector<Trial> batch;
  while (next < opts.trials) {
    const std::size_t count = std::min(opts.chunk, opts.trials - next);
    batch.assign(count, Trial{});
    parallel_for(count, opts.workers, [&](std::size_t i) {
      batch[i] = run_trial(net, start, opts.base_seed, next + i, solve, opts.record_wall_time);
    });
    if (log) append_and_sync(log.get(), batch);
    for (const Trial& t : batch) dist.add(t);
    next += count;
    if (opts.progress) opts.progress(next, opts.trials);
    const double rate = static_cast<double>(dist.excluded()) / static_cast<double>(dist.total());
    if (rate > opts.max_failure_rate) {
      std::ostringstream msg;
      msg << "solver failure rate " << std::setprecision(4) << 100.0 * rate << "% after "
          << dist.total() << " trials on " << net.describe() << " (" << dist.excluded()
          << " degenerate or incomplete) exceeds " << 100.0 * opts.max_failure_rate << "%";
      throw SolverFailureError(msg.str());
    }
  }
  return dist;
}

void write_histogram_csv(std::ostream& os, const EmpiricalDistribution& dist) {
  os << "count,occurrences,percentage\n";
  for (const auto& [c, k] : dist.histogram()) {
    os << c << ',' << k << ',' << std::fixed << std::setprecision(4)
       << 100.0 * dist.frequency(c) << std::defaultfloat << '\n';
  }
}

nlohmann::json summary_json(const EmpiricalDistribution& dist) {
  nlohmann::json j;
  j["trials"] = dist.total();
  j["included"] = dist.included();
  j["excluded"] = dist.excluded();
  j["alpha"] = dist.alpha();
  j["epsilon"] = dist.included() ? nlohmann::json(dist.epsilon()) : nlohmann::json(nullptr);
  j["mean"] = dist.included() ? nlohmann::json(dist.mean()) : nlohmann::json(nullptr);
  nlohmann::json hist = nlohmann::json::object();
  nlohmann::json freq = nlohmann::json::object();
  for (const auto& [c, k] : dist.histogram()) {
    hist[std::to_string(c)] = k;
    freq[std::to_string(c)] = dist.frequency(c);
  }
  j["histogram"] = hist;
  j["frequencies"] = freq;
  return j;
}

}  // namespace lpf
