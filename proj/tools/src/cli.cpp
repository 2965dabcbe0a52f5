#include "lpf_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lpf/baseline.hpp"
#include "lpf/distribution.hpp"
#include "lpf/errors.hpp"
#include "lpf/parallel.hpp"
#include "lpf/regions.hpp"
#include "lpf/serialization.hpp"
#include "lpf/solver.hpp"
#include "lpf/theorems.hpp"

#ifndef LPF_VERSION
#define LPF_VERSION "unknown"
#endif

namespace lpf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw PreconditionError("bad " + what + ": '" + text + "'");
  }
  if (pos != text.size() || text.front() == '-') {
    throw PreconditionError("bad " + what + ": '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Edge parse_edge(const std::string& token) {
  const auto dash = token.find('-');
  if (dash == std::string::npos) throw PreconditionError("bad edge '" + token + "', expected a-b");
  std::size_t a = parse_size(token.substr(0, dash), "edge endpoint");
  std::size_t b = parse_size(token.substr(dash + 1), "edge endpoint");
  if (a > b) std::swap(a, b);
  return Edge{a, b};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Context {
  Config& cfg;
  std::ostream& out;
  std::ostream& err;
  std::string command;
};

std::uint64_t resolve_seed(Context& ctx) {
  if (ctx.cfg.seed) return *ctx.cfg.seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t(rd()) << 32) ^ rd();
  ctx.cfg.seed = s;
  ctx.out << "seed: " << s << " (drawn from entropy)\n";
  return s;
}

std::size_t resolve_workers(const Config& cfg) {
  return cfg.workers == 0 ? default_workers() : cfg.workers;
}

fs::path output_dir(const Config& cfg) {
  fs::path dir;
  if (!cfg.out_dir.empty()) {
    dir = cfg.out_dir;
  } else if (const char* env = std::getenv("LPF_OUTPUT_DIR"); env && *env) {
    dir = env;
  } else {
    dir = ".";
  }
  fs::create_directories(dir);
  return dir;
}

json config_json(const Config& c) {
  json j;
  j["topology"] = c.topology;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["workers"] = c.workers;
  j["start"] = c.start;
  j["no_bipartite"] = c.no_bipartite;
  j["b"] = c.b;
  j["b_file"] = c.b_file;
  j["random"] = c.random;
  j["trials"] = c.trials;
  j["alpha"] = c.alpha;
  j["resume"] = c.resume;
  j["fix"] = c.fix;
  j["width"] = c.width;
  j["height"] = c.height;
  j["degrees"] = c.degrees;
  j["mc_trials"] = c.mc_trials;
  j["compare"] = c.compare;
  j["theorem"] = c.theorem;
  j["samples"] = c.samples;
  return j;
}

json tolerances_json(const SolveOptions& s) {
  json j;
  j["dedup_tol"] = s.dedup_tol;
  j["real_tol"] = s.real_tol;
  j["same_root_tol"] = s.same_root_tol;
  j["singular_condition"] = s.singular_condition;
  j["newton_tol"] = s.refine.tol;
  j["newton_max_iterations"] = s.refine.max_iter;
  j["min_step"] = s.track.min_step;
  j["max_step"] = s.track.max_step;
  j["divergence_bound"] = s.track.divergence_bound;
  return j;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

/// Written next to `artifact` as <stem>.manifest.json.
void write_manifest(const Context& ctx, const fs::path& artifact, const std::string& start_hash,
                    json extra = json::object()) {
  json m;
  m["command"] = ctx.command;
  m["config"] = config_json(ctx.cfg);
  m["seed"] = ctx.cfg.seed ? json(*ctx.cfg.seed) : json(nullptr);
  m["version"] = LPF_VERSION;
  m["tolerances"] = tolerances_json(SolveOptions{});
  m["start_set_hash"] = start_hash;
  m["outputs"] = extra;
  m["created_at"] = utc_now();
  fs::path path = artifact;
  path.replace_extension(".manifest.json");
  write_json_file(path, m);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
  if (!os) throw Error("write failed: " + path.string());
}

StartSet obtain_start(Context& ctx, const Network& net, std::uint64_t seed) {
  StartSet start;
  if (!ctx.cfg.start.empty()) {
    start = start_set_from_json(read_json_file(ctx.cfg.start));
    start.check_matches(net);
  } else {
    MonodromyOptions mo;
    mo.use_bipartite = !ctx.cfg.no_bipartite;
    mo.workers = resolve_workers(ctx.cfg);
    start = build_start_set(net, derive_seed(seed, 0), mo);
  }
  if (!ctx.cfg.save_start.empty()) write_json_file(ctx.cfg.save_start, start_set_to_json(start));
  if (!start.complete) {
    ctx.err << "warning: start set covers " << start.solution_count << " solutions";
    if (start.expected_count) ctx.err << " of " << *start.expected_count;
    ctx.err << "\n";
  }
  return start;
}

std::vector<double> obtain_b(Context& ctx, const Network& net, std::uint64_t seed) {
  const Config& c = ctx.cfg;
  const int sources = int(!c.b.empty()) + int(!c.b_file.empty()) + int(c.random);
  if (sources != 1) throw PreconditionError("give exactly one of --b, --b-file, --random");
  std::vector<double> b;
  if (!c.b.empty()) {
    b = c.b;
  } else if (!c.b_file.empty()) {
    b = read_numbers(c.b_file);
  } else {
    Rng rng(derive_seed(seed, 1));
    b = sample_sphere(net.num_edges(), rng);
  }
  if (b.size() != net.num_edges()) {
    throw PreconditionError("expected " + std::to_string(net.num_edges()) + " susceptances for " +
                            net.describe() + ", got " + std::to_string(b.size()));
  }
  return b;
}

// ---------------------------------------------------------------------------

int cmd_solve(Context& ctx) {
  const Network net = parse_topology(ctx.cfg.topology);
  const std::uint64_t seed = resolve_seed(ctx);
  const std::vector<double> b = obtain_b(ctx, net, seed);
  const fs::path path = ctx.cfg.out.empty() ? output_dir(ctx.cfg) / "solution.json" : fs::path(ctx.cfg.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());

  SolutionSet sol;
  std::string hash;
  if (net.is_tree()) {
    sol.trivial = trivial_solutions(net.num_nodes());
    sol.complete = true;
  } else {
    const StartSet start = obtain_start(ctx, net, seed);
    hash = start_set_hash(start);
    Rng rng(derive_seed(seed, 2));
    SolveOptions so;
    so.workers = resolve_workers(ctx.cfg);
    sol = solve_all(net, b, start, rng, so);
  }
  json j = solution_set_to_json(sol, hash);
  j["topology"] = net.describe();
  j["b"] = b;
  write_json_file(path, j);
  write_manifest(ctx, path, hash, {{"solution", path.filename().string()}});

  ctx.out << net.describe() << ": " << sol.nontrivial.size() << " nontrivial complex";
  if (sol.expected_nontrivial) ctx.out << " (expected " << sol.expected_nontrivial << ")";
  ctx.out << "\n" << sol.real_total() << " real (" << sol.real_nontrivial_count() << " nontrivial)\n";
  if (sol.degenerate) {
    ctx.out << "status: degenerate\n";
    return kDegenerate;
  }
  if (!sol.complete) {
    ctx.out << "status: incomplete\n";
    return kIncomplete;
  }
  ctx.out << "status: complete\n";
  return kOk;
}

int cmd_distribution(Context& ctx) {
  const Network net = parse_topology(ctx.cfg.topology);
  if (net.is_tree()) throw PreconditionError("trees have no nontrivial solutions to count");
  if (!ctx.cfg.resume.empty() && !ctx.cfg.seed) {
    throw PreconditionError("--resume needs the --seed of the original run");
  }
  const std::uint64_t seed = resolve_seed(ctx);
  const fs::path dir = output_dir(ctx.cfg);
  const StartSet start = obtain_start(ctx, net, seed);
  const std::string hash = start_set_hash(start);

  DistributionOptions opts;
  opts.trials = ctx.cfg.trials;
  opts.base_seed = seed;
  opts.workers = resolve_workers(ctx.cfg);
  opts.alpha = ctx.cfg.alpha;
  opts.resume = !ctx.cfg.resume.empty();
  opts.log_path = opts.resume ? fs::path(ctx.cfg.resume) : dir / "trials.jsonl";
  if (!opts.resume && fs::exists(*opts.log_path)) fs::remove(*opts.log_path);
  std::ostream& err = ctx.err;
  opts.progress = [&err](std::size_t done, std::size_t total) {
    err << "\r" << done << "/" << total << " trials" << (done == total ? "\n" : "") << std::flush;
  };
  const EmpiricalDistribution dist = run_distribution(net, start, opts);

  const fs::path csv = dir / "histogram.csv";
  std::ostringstream hs;
  write_histogram_csv(hs, dist);
  write_text(csv, hs.str());
  json summary = summary_json(dist);
  summary["topology"] = net.describe();
  if (auto fam = solution_count_bounds(family_of(net), net.num_nodes())) {
    summary["nontrivial_bound"] = fam->nontrivial;
  }
  const fs::path sj = dir / "summary.json";
  write_json_file(sj, summary);
  write_manifest(ctx, sj, hash,
                 {{"histogram", "histogram.csv"}, {"summary", "summary.json"},
                  {"log", opts.resume ? ctx.cfg.resume : std::string("trials.jsonl")}});

  ctx.out << net.describe() << ": " << dist.included() << " trials, " << dist.excluded()
          << " excluded\n";
  for (const auto& [count, k] : dist.histogram()) {
    ctx.out << "  " << std::setw(4) << count << "  " << std::fixed << std::setprecision(2)
            << 100.0 * dist.frequency(count) << "%\n";
  }
  ctx.out << std::setprecision(4) << "mean " << dist.mean() << ", epsilon " << dist.epsilon()
          << " at alpha " << dist.alpha() << "\n";
  return kOk;
}

int cmd_regions(Context& ctx) {
  const Network net = parse_topology(ctx.cfg.topology);
  const std::uint64_t seed = resolve_seed(ctx);
  RegionSpec spec{net, parse_fixed(net, ctx.cfg.fix), ctx.cfg.width, ctx.cfg.height};
  spec.free_edges();
  if (spec.width == 0 || spec.height == 0) throw PreconditionError("grid must be nonempty");
  const fs::path dir = output_dir(ctx.cfg);
  const StartSet start = obtain_start(ctx, net, seed);
  const std::string hash = start_set_hash(start);
  const RegionGrid grid = sample_region(spec, start, seed, resolve_workers(ctx.cfg));

  std::size_t bound = 14;
  if (auto fam = solution_count_bounds(family_of(net), net.num_nodes())) {
    bound = std::max<std::size_t>(bound, fam->nontrivial);
  }
  write_text(dir / "region.ppm", render_image(grid, default_color_map(bound)));
  std::ostringstream cs;
  write_region_csv(cs, grid);
  write_text(dir / "region.csv", cs.str());
  const double flagged = double(grid.flagged_count()) / double(grid.cells.size());
  json extra = {{"image", "region.ppm"}, {"csv", "region.csv"}, {"flagged_fraction", flagged}};
  if (flagged > 0.05) {
    extra["warning"] = "more than 5% of cells are degenerate or incomplete";
    ctx.err << "warning: " << grid.flagged_count() << " flagged cells\n";
  }
  write_manifest(ctx, dir / "region.ppm", hash, extra);

  std::map<std::size_t, std::size_t> seen;
  for (const auto& cell : grid.cells) {
    if (!cell.flagged) ++seen[cell.count];
  }
  ctx.out << net.describe() << ": " << grid.width << "x" << grid.height << " cells, "
          << grid.flagged_count() << " flagged\n";
  for (const auto& [count, k] : seen) ctx.out << "  " << count << ": " << k << " cells\n";
  return kOk;
}

int cmd_kac(Context& ctx) {
  std::vector<std::size_t> degrees = ctx.cfg.degrees;
  json compare;
  if (!ctx.cfg.compare.empty()) {
    compare = read_json_file(ctx.cfg.compare);
    if (!compare.contains("mean") || compare["mean"].is_null() || !compare.contains("nontrivial_bound")) {
      throw PreconditionError(ctx.cfg.compare + " is not a distribution summary with a mean");
    }
    if (degrees.empty()) degrees.push_back(compare["nontrivial_bound"].get<std::size_t>());
  }
  if (degrees.empty()) throw PreconditionError("give --degree or --compare");
  for (std::size_t d : degrees) {
    if (d == 0) throw PreconditionError("degree must be at least 1");
  }
  const bool mc = ctx.cfg.mc_trials > 0;
  const std::uint64_t seed = mc ? resolve_seed(ctx) : ctx.cfg.seed.value_or(0);
  const fs::path dir = output_dir(ctx.cfg);

  std::ostringstream csv;
  csv << std::setprecision(10) << "degree,kac_expected";
  if (mc) csv << ",monte_carlo_mean,standard_error,trials";
  csv << "\n";
  ctx.out << std::fixed;
  for (std::size_t d : degrees) {
    const double k = kac_expected(d);
    csv << d << "," << k;
    ctx.out << "N=" << d << " kac " << std::setprecision(4) << k;
    if (mc) {
      const auto dist = random_poly_distribution(d, ctx.cfg.mc_trials, derive_seed(seed, d),
                                                 resolve_workers(ctx.cfg));
      double var = 0.0;
      for (const auto& [c, n] : dist.histogram()) var += double(n) * std::pow(double(c) - dist.mean(), 2);
      const double se = std::sqrt(var / double(dist.included() - 1) / double(dist.included()));
      csv << "," << dist.mean() << "," << se << "," << dist.included();
      ctx.out << ", monte carlo " << dist.mean() << " +- " << se;
    }
    csv << "\n";
    ctx.out << "\n";
  }
  write_text(dir / "kac.csv", csv.str());
  json extra = {{"table", "kac.csv"}};
  if (!compare.is_null()) {
    const double mean = compare["mean"].get<double>();
    const std::size_t d = compare["nontrivial_bound"].get<std::size_t>();
    const double k = kac_expected(d);
    std::ostringstream cmp;
    cmp << std::setprecision(10) << "network,degree,network_expected,kac_expected,difference\n"
        << compare.value("topology", std::string("network")) << "," << d << "," << mean << ","
        << k << "," << mean - k << "\n";
    write_text(dir / "comparison.csv", cmp.str());
    extra["comparison"] = "comparison.csv";
    ctx.out << compare.value("topology", std::string("network")) << " " << std::setprecision(4)
            << mean << " vs kac " << k << "\n";
  }
  write_manifest(ctx, dir / "kac.csv", "", extra);
  return kOk;
}

int cmd_bounds(Context& ctx) {
  const Network net = parse_topology(ctx.cfg.topology);
  const auto bounds = solution_count_bounds(family_of(net), net.num_nodes());
  const fs::path dir = output_dir(ctx.cfg);
  json j;
  j["topology"] = net.describe();
  if (bounds) {
    j["total"] = bounds->total;
    j["nontrivial"] = bounds->nontrivial;
    ctx.out << net.describe() << ": total " << bounds->total << ", nontrivial " << bounds->nontrivial
            << "\n";
  } else if (net.is_tree()) {
    const std::uint64_t trivial = std::uint64_t(1) << (net.num_nodes() - 1);
    j["total"] = trivial;
    j["nontrivial"] = 0;
    ctx.out << net.describe() << ": total " << trivial << ", nontrivial 0\n";
  } else {
    j["total"] = nullptr;
    j["nontrivial"] = nullptr;
    ctx.out << net.describe() << ": no closed-form count\n";
  }
  write_json_file(dir / "bounds.json", j);
  write_manifest(ctx, dir / "bounds.json", "", {{"bounds", "bounds.json"}});
  return kOk;
}

int cmd_verify(Context& ctx) {
  const Network net = parse_topology(ctx.cfg.topology);
  const std::string& th = ctx.cfg.theorem;
  const std::uint64_t seed = resolve_seed(ctx);
  const fs::path dir = output_dir(ctx.cfg);
  json result;
  result["theorem"] = th;
  result["topology"] = net.describe();
  bool pass = false;
  std::string hash;
  std::ostringstream line;

  if (th == "max-real") {
    if (!net.is_cycle()) throw PreconditionError("max-real applies to cycles");
    const MaxRealConstruction c = max_real_construction(net.num_nodes());
    const StartSet start = obtain_start(ctx, net, seed);
    hash = start_set_hash(start);
    Rng rng(derive_seed(seed, 2));
    SolveOptions so;
    so.workers = resolve_workers(ctx.cfg);
    const SolutionSet sol = solve_all(net, c.b, start, rng, so);
    pass = sol.complete && !sol.degenerate && sol.real_total() == c.expected_real_total;
    result["b"] = c.b;
    result["real_total"] = sol.real_total();
    result["expected_real_total"] = c.expected_real_total;
    line << sol.real_total() << " real of " << c.expected_real_total;
  } else if (th == "infinite-family") {
    const std::vector<double> b(net.num_edges(), 1.0);
    Rng rng(derive_seed(seed, 3));
    const FamilyCheck fc = verify_infinite_family(net, b, rng, ctx.cfg.samples);
    const StartSet start = obtain_start(ctx, net, seed);
    hash = start_set_hash(start);
    Rng srng(derive_seed(seed, 2));
    SolveOptions so;
    so.workers = resolve_workers(ctx.cfg);
    const SolutionSet sol = solve_all(net, b, start, srng, so);
    pass = fc.holds && sol.degenerate;
    result["max_residual"] = fc.max_residual;
    result["samples"] = fc.samples;
    result["solver_degenerate"] = sol.degenerate;
    line << fc.samples << " family points, max residual " << std::scientific << std::setprecision(2)
         << fc.max_residual << ", solver " << (sol.degenerate ? "flags degenerate" : "does not flag degenerate");
  } else if (th == "tree") {
    Rng rng(derive_seed(seed, 4));
    const TreeCheck tc = check_tree_trivial(net, ctx.cfg.samples, rng);
    pass = tc.holds;
    result["counts"] = tc.counts;
    std::size_t worst = 0;
    for (std::size_t c : tc.counts) worst = std::max(worst, c);
    line << tc.counts.size() << " trials, at most " << worst << " nontrivial real";
  } else {
    throw PreconditionError("unknown theorem '" + th + "'");
  }
  result["pass"] = pass;
  write_json_file(dir / "verify.json", result);
  write_manifest(ctx, dir / "verify.json", hash, {{"result", "verify.json"}});
  ctx.out << (pass ? "PASS" : "FAIL") << ", " << line.str() << "\n";
  return pass ? kOk : kCheckFailed;
}

void add_common(CLI::App* sub, Config& c, bool topology = true) {
  if (topology) {
    sub->add_option("--topology", c.topology, "Network: cycle:n, complete:n or tree:<a-b,...|file>")
        ->required();
  }
  sub->add_option("--seed", c.seed, "Base random seed; drawn from entropy and printed if absent");
  sub->add_option("--workers", c.workers, "Worker threads (0 = available parallelism)");
  sub->add_option("--out-dir", c.out_dir, "Output directory (default $LPF_OUTPUT_DIR or .)");
}

void add_start(CLI::App* sub, Config& c) {
  sub->add_option("--start", c.start, "Load a cached start set instead of running monodromy")
      ->check(CLI::ExistingFile);
  sub->add_option("--save-start", c.save_start, "Write the start set used to this file");
  sub->add_flag("--no-bipartite", c.no_bipartite,
                "Use only y-negation symmetry when building the start set");
}

}  // namespace

Network parse_topology(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw PreconditionError("bad topology '" + spec + "', expected cycle:n, complete:n or tree:...");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "cycle") return cycle_graph(parse_size(arg, "node count"));
  if (kind == "complete") return complete_graph(parse_size(arg, "node count"));
  if (kind == "tree") {
    const std::string list = fs::is_regular_file(arg) ? slurp(arg) : arg;
    std::vector<Edge> edges;
    for (const auto& tok : split_tokens(list)) edges.push_back(parse_edge(tok));
    if (edges.empty()) throw PreconditionError("tree needs at least one edge");
    return tree_from_edges(std::move(edges));
  }
  throw PreconditionError("unknown topology kind '" + kind + "'");
}

std::map<std::size_t, double> parse_fixed(const Network& net, const std::vector<std::string>& fix) {
  std::map<std::size_t, double> out;
  for (const auto& item : fix) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("bad --fix '" + item + "', expected a-b=value");
    const Edge e = parse_edge(item.substr(0, eq));
    const auto idx = net.edge_index(e.from, e.to);
    if (!idx) throw PreconditionError("no edge " + item.substr(0, eq) + " in " + net.describe());
    double v = 0.0;
    try {
      std::size_t pos = 0;
      v = std::stod(item.substr(eq + 1), &pos);
      if (pos != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw PreconditionError("bad value in --fix '" + item + "'");
    }
    out[*idx] = v;
  }
  return out;
}

std::vector<double> read_numbers(const fs::path& path) {
  std::vector<double> out;
  for (const auto& tok : split_tokens(slurp(path))) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw PreconditionError("bad number '" + tok + "' in " + path.string());
    out.push_back(v);
  }
  return out;
}

std::unique_ptr<CLI::App> build_app(Config& c) {
  auto app = std::make_unique<CLI::App>("Lossless power flow solver: monodromy plus parameter homotopy",
                                        "lpf");
  app->require_subcommand(1);
  app->set_version_flag("--version", LPF_VERSION);

  auto* solve = app->add_subcommand("solve", "Find all complex solutions for one susceptance vector");
  add_common(solve, c);
  add_start(solve, c);
  solve->add_option("--b", c.b, "Susceptances, one per edge in lexicographic edge order")
      ->delimiter(',');
  solve->add_option("--b-file", c.b_file, "File with susceptances (comma or whitespace separated)")
      ->check(CLI::ExistingFile);
  solve->add_flag("--random", c.random, "Draw susceptances uniformly on the unit sphere");
  solve->add_option("--out", c.out, "Solution JSON path (default <out-dir>/solution.json)");

  auto* dist = app->add_subcommand("distribution", "Distribution of real solution counts");
  add_common(dist, c);
  add_start(dist, c);
  dist->add_option("--trials", c.trials, "Number of random susceptance draws")->check(CLI::PositiveNumber);
  dist->add_option("--alpha", c.alpha, "Confidence level parameter for the DKW band")
      ->check(CLI::Range(1e-12, 1.0));
  dist->add_option("--resume", c.resume, "Continue the trial log at this path");

  auto* regions = app->add_subcommand("regions", "Solution regions on a sphere of three free susceptances");
  add_common(regions, c);
  add_start(regions, c);
  regions->add_option("--fix", c.fix, "Fixed susceptance a-b=value (repeatable); three edges stay free");
  regions->add_option("--width", c.width, "Longitude cells");
  regions->add_option("--height", c.height, "Latitude cells");

  auto* kac = app->add_subcommand("kac", "Expected real roots of Gaussian random polynomials");
  add_common(kac, c, false);
  kac->add_option("--degree", c.degrees, "Polynomial degree (repeatable or comma separated)")
      ->delimiter(',');
  kac->add_option("--trials", c.mc_trials, "Monte Carlo trials per degree (0 = integral only)");
  kac->add_option("--compare", c.compare, "Distribution summary.json to compare against")
      ->check(CLI::ExistingFile);

  auto* bounds = app->add_subcommand("bounds", "Number of complex solutions for a topology");
  add_common(bounds, c);

  auto* verify = app->add_subcommand("verify", "Check a theorem construction numerically");
  add_common(verify, c);
  add_start(verify, c);
  verify->add_option("--theorem", c.theorem, "max-real, infinite-family or tree")
      ->required()
      ->check(CLI::IsMember({"max-real", "infinite-family", "tree"}));
  verify->add_option("--samples", c.samples, "Family points or tree trials to check");
  return app;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  auto app = build_app(cfg);
  try {
    app->parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app->exit(e, out, err);
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsage;
  }

  auto* sub = app->get_subcommands().front();
  Context ctx{cfg, out, err, sub->get_name()};
  try {
    if (ctx.command == "solve") return cmd_solve(ctx);
    if (ctx.command == "distribution") return cmd_distribution(ctx);
    if (ctx.command == "regions") return cmd_regions(ctx);
    if (ctx.command == "kac") return cmd_kac(ctx);
    if (ctx.command == "bounds") return cmd_bounds(ctx);
    if (ctx.command == "verify") return cmd_verify(ctx);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsage;
}

}  // namespace lpf::cli
