#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpf/network.hpp"

namespace lpf::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDegenerate = 2,
  kIncomplete = 3,
  kRuntimeFailure = 4,
  kCheckFailed = 5,
};

/// Parsed flag values. Only the fields of the selected subcommand are used.
struct Config {
  std::string topology;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;  // 0 = available parallelism
  std::string out_dir;
  std::string out;
  std::string start;
  std::string save_start;
  bool no_bipartite = false;

  std::vector<double> b;
  std::string b_file;
  bool random = false;

  std::size_t trials = 20000;
  double alpha = 0.01;
  std::string resume;

  std::vector<std::string> fix;
  std::size_t width = 400;
  std::size_t height = 200;

  std::vector<std::size_t> degrees;
  std::size_t mc_trials = 0;
  std::string compare;

  std::string theorem;
  std::size_t samples = 50;
};

/// cycle:n, complete:n, or tree:<edges> where <edges> is "a-b,c-d,..." or a
/// file holding the same list (commas or whitespace separated).
Network parse_topology(const std::string& spec);

/// "a-b=value" entries keyed by the edge index of a-b in `net`.
std::map<std::size_t, double> parse_fixed(const Network& net, const std::vector<std::string>& fix);

/// Reads whitespace or comma separated numbers.
std::vector<double> read_numbers(const std::filesystem::path& path);

/// The application with all subcommands bound to `config`.
std::unique_ptr<CLI::App> build_app(Config& config);

/// Parses and runs. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lpf::cli
