#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "lpf/errors.hpp"
#include "lpf/regions.hpp"
#include "test_support.hpp"

namespace lpf {
namespace {

TEST(ColorMap, DefaultColors) {
  const ColorMap c = default_color_map();
  EXPECT_EQ(c.at(0), (Rgb{0, 0, 255}));
  EXPECT_EQ(c.at(2), (Rgb{255, 0, 0}));
  EXPECT_EQ(c.at(4), (Rgb{0, 160, 0}));
  EXPECT_EQ(c.at(10), (Rgb{0, 0, 0}));
  EXPECT_EQ(c.size(), 8u);
  const ColorMap big = default_color_map(28);
  EXPECT_EQ(big.size(), 15u);
  EXPECT_EQ(big.at(14), c.at(14));
  for (const auto& [count, rgb] : big) EXPECT_NE(rgb, (Rgb{255, 255, 255})) << count;
}

TEST(RegionSpec, RequiresExactlyThreeFreeEdges) {
  RegionSpec ok{cycle_graph(4), {{0, 0.1}}};
  EXPECT_EQ(ok.free_edges(), (std::vector<std::size_t>{1, 2, 3}));
  RegionSpec none{cycle_graph(4), {}};
  EXPECT_THROW(none.free_edges(), PreconditionError);
  RegionSpec bad{cycle_graph(4), {{9, 0.1}}};
  EXPECT_THROW(bad.free_edges(), PreconditionError);
}

TEST(RegionGrid, CellCentres) {
  EXPECT_NEAR(cell_longitude(0, 4), std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(cell_latitude(0, 2), std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(cell_latitude(1, 2), -std::numbers::pi / 4, 1e-15);
  RegionSpec spec{cycle_graph(4), {{0, 0.5}}};
  const auto b = region_parameters(spec, 0.3, -0.4);
  EXPECT_EQ(b[0], 0.5);
  EXPECT_NEAR(b[1] * b[1] + b[2] * b[2] + b[3] * b[3], 1.0, 1e-15);
  EXPECT_NEAR(b[3], std::sin(-0.4), 1e-15);
}

class C3Region : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    RegionSpec spec{cycle_graph(3), {}, 24, 12};
    grid_ = new RegionGrid(sample_region(spec, testing::cached_start(spec.network), 3, 2));
  }
  static void TearDownTestSuite() { delete grid_; }
  static RegionGrid* grid_;
};
RegionGrid* C3Region::grid_ = nullptr;

TEST_F(C3Region, OnlyTwoCountsAppear) {
  std::set<std::size_t> counts;
  for (const auto& c : grid_->cells) {
    if (!c.flagged) counts.insert(c.count);
  }
  EXPECT_EQ(counts, (std::set<std::size_t>{0, 2}));
  EXPECT_EQ(grid_->cells.size(), 24u * 12u);
  EXPECT_EQ(grid_->flagged_count(), 0u);
}

TEST_F(C3Region, AntipodalCellsAgree) {
  for (std::size_t r = 0; r < grid_->height; ++r) {
    for (std::size_t c = 0; c < grid_->width; ++c) {
      const auto& a = grid_->at(r, c);
      const auto& b = grid_->at(grid_->height - 1 - r, (c + grid_->width / 2) % grid_->width);
      EXPECT_EQ(a.count, b.count) << r << "," << c;
    }
  }
}

TEST_F(C3Region, PermutingSusceptancesKeepsCount) {
  const Network net = cycle_graph(3);
  Rng rng(4);
  for (std::size_t i = 0; i < grid_->cells.size(); i += 7) {
    std::vector<double> b = grid_->cells[i].b;
    std::swap(b[0], b[2]);
    const auto s = solve_all(net, b, testing::cached_start(net), rng);
    EXPECT_EQ(s.real_nontrivial_count(), grid_->cells[i].count);
  }
}

TEST_F(C3Region, ImageAndCsv) {
  const std::string img = render_image(*grid_, default_color_map());
  const std::string header = "P6\n24 12\n255\n";
  ASSERT_EQ(img.substr(0, header.size()), header);
  EXPECT_EQ(img.size(), header.size() + 24u * 12u * 3u);
  std::set<std::array<unsigned char, 3>> colors;
  for (std::size_t p = header.size(); p < img.size(); p += 3) {
    colors.insert({(unsigned char)img[p], (unsigned char)img[p + 1], (unsigned char)img[p + 2]});
  }
  EXPECT_EQ(colors.size(), 2u);
  std::ostringstream os;
  write_region_csv(os, *grid_);
  const std::string csv = os.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta,phi,b0,b1,b2,count,flagged");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 24 * 12 + 1);
}

TEST(RenderImage, UniformAndFlaggedCells) {
  RegionGrid g;
  g.width = 2;
  g.height = 1;
  g.cells.resize(2);
  g.cells[1].flagged = true;
  const std::string img = render_image(g, default_color_map());
  const std::string header = "P6\n2 1\n255\n";
  EXPECT_EQ(img.substr(header.size()), std::string("\x00\x00\xff\xff\xff\xff", 6));
  g.cells[0].count = 16;
  try {
    render_image(g, default_color_map());
    FAIL() << "expected missing color error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("16"), std::string::npos);
  }
  g.cells.pop_back();
  EXPECT_THROW(render_image(g, default_color_map()), PreconditionError);
}

TEST(SampleRegion, FixedEdgeC4CountsStayInSupport) {
  RegionSpec spec{cycle_graph(4), {{0, 0.1}}, 12, 6};
  const RegionGrid g = sample_region(spec, testing::cached_start(spec.network), 5);
  for (const auto& c : g.cells) {
    if (!c.flagged) EXPECT_TRUE(c.count == 0 || c.count == 4) << c.count;
  }
}

}  // namespace
}  // namespace lpf
