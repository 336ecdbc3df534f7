#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "primedyn/error.hpp"
#include "primedyn/symbol_sequence.hpp"

namespace primedyn {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Vertex-contraction IFS driven by a symbol stream.
struct IFSConfig {
  int vertex_count = 3;
  double contraction = 0.5;
  int width = 1024;
  std::size_t burn_in = 100;

  /// Triangle (0,0), (1,0), (0.5,1); square corners with symbol s at (s & 1, s >> 1).
  std::vector<Point> vertices() const {
    if (vertex_count == 3) return {{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}};
    if (vertex_count == 4) return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    throw DomainError("vertex count must be 3 or 4");
  }

  void validate() const {
    require(vertex_count == 3 || vertex_count == 4, "vertex count must be 3 or 4");
    require(contraction > 0.0 && contraction < 1.0, "contraction must lie in (0, 1)");
    require(width >= 16, "grid width must be >= 16");
  }
};

/// W x W visit counts; cell (col, row) with row 0 at y = 0.
class OccupancyGrid {
 public:
  explicit OccupancyGrid(int width)
      : width_(width), counts_(static_cast<std::size_t>(width) * static_cast<std::size_t>(width), 0) {
    require(width >= 1, "grid width must be positive");
  }

  int width() const noexcept { return width_; }
  std::uint64_t points_plotted() const noexcept { return points_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  std::uint64_t at(int col, int row) const { return counts_[index(col, row)]; }
  bool occupied(int col, int row) const { return at(col, row) != 0; }

  void add(int col, int row, std::uint64_t n = 1) {
    counts_[index(col, row)] += n;
    points_ += n;
  }

  /// Bins a point of the unit square; coordinates are clamped to the last cell.
  void plot(Point p) {
    const auto cell = [this](double v) {
      return std::clamp(static_cast<int>(std::floor(v * width_)), 0, width_ - 1);
    };
    add(cell(p.x), cell(p.y));
  }

  std::size_t occupied_cells() const {
    return static_cast<std::size_t>(std::count_if(counts_.begin(), counts_.end(), [](auto c) { return c != 0; }));
  }

  bool operator==(const OccupancyGrid&) const = default;

 private:
  std::size_t index(int col, int row) const {
    require(col >= 0 && col < width_ && row >= 0 && row < width_, "grid cell out of range");
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t points_ = 0;
};

/// Chaos Game with vertices chosen by `source`, starting from the polygon centroid.
/// `visit`, if given, receives every plotted point.
template <typename Visitor>
OccupancyGrid chaos_game_render(const SymbolSequence& source, const IFSConfig& config, Visitor&& visit) {
  config.validate();
  require(source.alphabet_size == config.vertex_count, "alphabet size does not match vertex count");
  require(source.size() > config.burn_in, "sequence not longer than the burn-in");
  const auto verts = config.vertices();
  Point x{};
  for (const auto& v : verts) {
    x.x += v.x / static_cast<double>(verts.size());
    x.y += v.y / static_cast<double>(verts.size());
  }
  OccupancyGrid grid(config.width);
  const double f = config.contraction;
  for (std::size_t t = 0; t < source.size(); ++t) {
    const auto& v = verts[source.symbols[t]];
    x.x += f * (v.x - x.x);
    x.y += f * (v.y - x.y);
    if (t >= config.burn_in) {
      grid.plot(x);
      visit(x);
    }
  }
  return grid;
}

inline OccupancyGrid chaos_game_render(const SymbolSequence& source, const IFSConfig& config) {
  return chaos_game_render(source, config, [](Point) {});
}

/// Occupied s x s boxes for a box size s dividing the width.
inline std::size_t occupied_boxes(const OccupancyGrid& grid, int box) {
  const int w = grid.width();
  require(box >= 1 && w % box == 0, "box size must divide the grid width");
  const int n = w / box;
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int row = 0; row < w; ++row)
    for (int col = 0; col < w; ++col)
      if (grid.occupied(col, row))
        hit[static_cast<std::size_t>(row / box) * static_cast<std::size_t>(n) + static_cast<std::size_t>(col / box)] = 1;
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
}

/// Least-squares slope of log N(s) against log(W / s) over the box sizes s.
inline double box_counting_dimension(const OccupancyGrid& grid, std::span<const int> box_sizes) {
  require(box_sizes.size() >= 3, "need at least three box sizes");
  require(grid.occupied_cells() > 0, "grid is empty");
  std::vector<std::pair<double, double>> pts;
  for (int s : box_sizes) {
    pts.emplace_back(std::log(static_cast<double>(grid.width()) / s),
                     std::log(static_cast<double>(occupied_boxes(grid, s))));
  }
  double mx = 0.0;
  double my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  require(sxx > 0.0, "box sizes must not all be equal");
  return sxy / sxx;
}

/// Power-of-two box sizes 2, 4, ... up to width / 8 (width a power of two), else
/// every divisor in [2, width / 8].
inline std::vector<int> default_box_sizes(int width) {
  std::vector<int> sizes;
  for (int s = 2; s <= width / 8; ++s)
    if (width % s == 0 && (s & (s - 1)) == 0) sizes.push_back(s);
  if (sizes.size() < 3) {
    sizes.clear();
    for (int s = 1; s <= std::max(1, width / 4); ++s)
      if (width % s == 0) sizes.push_back(s);
  }
  return sizes;
}

/// Jaccard index of the occupied-cell sets; 1 for two empty grids.
inline double grid_similarity(const OccupancyGrid& a, const OccupancyGrid& b) {
  require(a.width() == b.width(), "grid widths differ");
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t i = 0; i < a.counts().size(); ++i) {
    const bool x = a.counts()[i] != 0;
    const bool y = b.counts()[i] != 0;
    both += x && y;
    either += x || y;
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either);
}

/// Fraction of occupied cells of `sub` that are empty in `super`.
inline double stray_fraction(const OccupancyGrid& sub, const OccupancyGrid& super) {
  require(sub.width() == super.width(), "grid widths differ");
  std::size_t occupied = 0;
  std::size_t stray = 0;
  for (std::size_t i = 0; i < sub.counts().size(); ++i) {
    if (sub.counts()[i] == 0) continue;
    ++occupied;
    stray += super.counts()[i] == 0;
  }
  return occupied == 0 ? 0.0 : static_cast<double>(stray) / static_cast<double>(occupied);
}

/// 8-bit grayscale raster, row 0 at the top: white background, visited cells
/// darkened by log(1 + count) relative to the busiest cell.
inline std::vector<std::uint8_t> grayscale_raster(const OccupancyGrid& grid) {
  const int w = grid.width();
  const auto max_count = *std::max_element(grid.counts().begin(), grid.counts().end());
  const double scale = max_count > 0 ? std::log1p(static_cast<double>(max_count)) : 1.0;
  std::vector<std::uint8_t> pixels(grid.counts().size(), 255);
  for (int row = 0; row < w; ++row) {
    for (int col = 0; col < w; ++col) {
      const auto c = grid.at(col, row);
      if (c == 0) continue;
      const double shade = std::log1p(static_cast<double>(c)) / scale;
      const auto level = static_cast<int>(std::lround(255.0 * (1.0 - shade) * 0.8));
      pixels[static_cast<std::size_t>(w - 1 - row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(col)] =
          static_cast<std::uint8_t>(level);
    }
  }
  return pixels;
}

}  // namespace primedyn
