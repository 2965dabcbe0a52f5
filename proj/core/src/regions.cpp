#include "lpf/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>

#include "lpf/distribution.hpp"
#include "lpf/errors.hpp"
#include "lpf/parallel.hpp"

namespace lpf {

ColorMap default_color_map(std::size_t max_count) {
  ColorMap m{{0, {0, 0, 255}},     {2, {255, 0, 0}},    {4, {0, 160, 0}},
             {6, {128, 0, 128}},   {8, {255, 255, 0}},  {10, {0, 0, 0}},
             {12, {255, 165, 0}},  {14, {255, 105, 180}}};
  // Golden-angle hues for larger counts.
  for (std::size_t c = 16, i = 0; c <= max_count; c += 2, ++i) {
    const double h = std::fmod(0.618033988749895 * static_cast<double>(i), 1.0) * 6.0;
    const double x = 1.0 - std::abs(std::fmod(h, 2.0) - 1.0);
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(h)) {
      case 0: r = 1; g = x; break;
      case 1: r = x; g = 1; break;
      case 2: g = 1; b = x; break;
      case 3: g = x; b = 1; break;
      case 4: r = x; b = 1; break;
      default: r = 1; b = x; break;
    }
    auto q = [](double v) { return static_cast<std::uint8_t>(40 + std::lround(v * 180.0)); };
    m[c] = {q(r), q(g), q(b)};
  }
  return m;
}

std::vector<std::size_t> RegionSpec::free_edges() const {
  std::vector<std::size_t> out;
  for (const auto& [e, v] : fixed) {
    if (e >= network.num_edges()) {
      throw PreconditionError("region spec fixes edge index " + std::to_string(e) +
                              " but the network has " + std::to_string(network.num_edges()) +
                              " edges");
    }
    if (!std::isfinite(v)) throw PreconditionError("region spec fixed value is not finite");
  }
  for (std::size_t e = 0; e < network.num_edges(); ++e) {
    if (!fixed.contains(e)) out.push_back(e);
  }
  if (out.size() != 3) {
    throw PreconditionError("region spec needs exactly 3 free edges, found " +
                            std::to_string(out.size()));
  }
  return out;
}

std::size_t RegionGrid::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const RegionCell& c) { return c.flagged; }));
}

double cell_longitude(std::size_t col, std::size_t width) {
  return 2.0 * std::numbers::pi * (static_cast<double>(col) + 0.5) / static_cast<double>(width);
}

double cell_latitude(std::size_t row, std::size_t height) {
  return std::numbers::pi / 2.0 -
         std::numbers::pi * (static_cast<double>(row) + 0.5) / static_cast<double>(height);
}

std::vector<double> region_parameters(const RegionSpec& spec, double theta, double phi) {
  const auto free = spec.free_edges();
  std::vector<double> b(spec.network.num_edges(), 0.0);
  for (const auto& [e, v] : spec.fixed) b[e] = v;
  b[free[0]] = std::cos(phi) * std::cos(theta);
  b[free[1]] = std::cos(phi) * std::sin(theta);
  b[free[2]] = std::sin(phi);
  return b;
}

RegionGrid sample_region(const RegionSpec& spec, const StartSet& start, std::uint64_t seed,
                         std::size_t workers, const SolveOptions& opts) {
  if (spec.width == 0 || spec.height == 0) {
    throw PreconditionError("region grid dimensions must be positive");
  }
  spec.free_edges();
  start.check_matches(spec.network);
  RegionGrid grid;
  grid.width = spec.width;
  grid.height = spec.height;
  grid.cells.resize(spec.width * spec.height);
  SolveOptions solve = opts;
  solve.workers = 1;
  parallel_for(grid.cells.size(), workers, [&](std::size_t i) {
    RegionCell& cell = grid.cells[i];
    cell.theta = cell_longitude(i % spec.width, spec.width);
    cell.phi = cell_latitude(i / spec.width, spec.height);
    cell.b = region_parameters(spec, cell.theta, cell.phi);
    double norm = 0.0;
    for (double v : cell.b) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : cell.b) v /= norm;
    Rng rng(derive_seed(seed, i));
    const SolutionSet s = solve_all(spec.network, cell.b, start, rng, solve);
    cell.count = s.real_nontrivial_count();
    cell.flagged = s.degenerate || !s.complete;
  });
  return grid;
}

std::string render_image(const RegionGrid& grid, const ColorMap& colors) {
  if (grid.cells.size() != grid.width * grid.height) {
    throw PreconditionError("render_image: grid is incomplete");
  }
  std::set<std::size_t> missing;
  for (const auto& c : grid.cells) {
    if (!c.flagged && !colors.contains(c.count)) missing.insert(c.count);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t c : missing) list += (list.empty() ? "" : ", ") + std::to_string(c);
    throw PreconditionError("render_image: no color for count(s) " + list);
  }
  std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) +
                    "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + 3 * grid.cells.size());
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const RegionCell& c = grid.cells[i];
    const Rgb rgb = c.flagged ? Rgb{255, 255, 255} : colors.at(c.count);
    for (int k = 0; k < 3; ++k) out[header + 3 * i + k] = static_cast<char>(rgb[k]);
  }
  return out;
}

void write_region_csv(std::ostream& os, const RegionGrid& grid) {
  const std::size_t m = grid.cells.empty() ? 0 : grid.cells.front().b.size();
  os << "theta,phi";
  for (std::size_t e = 0; e < m; ++e) os << ",b" << e;
  os << ",count,flagged\n";
  os.precision(17);
  for (const auto& c : grid.cells) {
    os << c.theta << ',' << c.phi;
    for (double v : c.b) os << ',' << v;
    os << ',' << c.count << ',' << (c.flagged ? 1 : 0) << '\n';
  }
}

}  // namespace lpf
