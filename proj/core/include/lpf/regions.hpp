#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lpf/network.hpp"
#include "lpf/solver.hpp"

namespace lpf {

using Rgb = std::array<std::uint8_t, 3>;
using ColorMap = std::map<std::size_t, Rgb>;

/// 0 blue, 2 red, 4 green, 6 purple, 8 yellow, 10 black, 12 orange, 14 pink;
/// further even counts up to max_count get generated colors.
ColorMap default_color_map(std::size_t max_count = 14);

struct RegionSpec {
  Network network;
  /// Values for every edge except exactly three free ones, keyed by edge index.
  std::map<std::size_t, double> fixed;
  std::size_t width = 400;   // longitude cells
  std::size_t height = 200;  // latitude cells

  /// Free edge indices in ascending order. Throws PreconditionError unless
  /// exactly three edges are free.
  std::vector<std::size_t> free_edges() const;
};

struct RegionCell {
  double theta = 0.0;  // longitude in [0, 2 pi)
  double phi = 0.0;    // latitude in (-pi/2, pi/2)
  std::vector<double> b;
  std::size_t count = 0;
  bool flagged = false;  // degenerate or incomplete
};

struct RegionGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<RegionCell> cells;  // row-major, top row (north) first

  const RegionCell& at(std::size_t row, std::size_t col) const { return cells[row * width + col]; }
  std::size_t flagged_count() const;
};

/// Cell centre angles of the equirectangular grid.
double cell_longitude(std::size_t col, std::size_t width);
double cell_latitude(std::size_t row, std::size_t height);

/// Susceptances for one direction: the free edges get the unit vector
/// (cos phi cos theta, cos phi sin theta, sin phi), fixed edges their value.
std::vector<double> region_parameters(const RegionSpec& spec, double theta, double phi);

/// Solves every cell; the full susceptance vector is normalized to unit norm
/// before solving. Cell i uses rng seed derive_seed(seed, i).
RegionGrid sample_region(const RegionSpec& spec, const StartSet& start, std::uint64_t seed,
                         std::size_t workers = 1, const SolveOptions& opts = {});

/// Binary PPM (P6), one pixel per cell, flagged cells white. Throws
/// PreconditionError naming any count missing from the color map.
std::string render_image(const RegionGrid& grid, const ColorMap& colors);

/// CSV "theta,phi,b0,...,count,flagged".
void write_region_csv(std::ostream& os, const RegionGrid& grid);

}  // namespace lpf
