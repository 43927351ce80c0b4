#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace yoro {

// Dense tile index in [0, catalog size).
using TileId = std::uint32_t;

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Display symbols for each tile, plus optional render colors.
class TileCatalog {
 public:
  TileCatalog() = default;
  explicit TileCatalog(std::vector<char> symbols, std::vector<Rgb> colors = {});

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  char symbol(TileId t) const { return symbols_.at(t); }
  const std::vector<char>& symbols() const { return symbols_; }

  bool has_colors() const { return !colors_.empty(); }
  const std::vector<Rgb>& colors() const { return colors_; }
  // Catalog color if present, otherwise a fixed fallback palette entry.
  Rgb color(TileId t) const;

  std::optional<TileId> find(char symbol) const;
  // Appends a new symbol; throws InvalidArgument on duplicates or when the
  // catalog carries colors (a color is then required, see the two-arg form).
  TileId add(char symbol);
  TileId add(char symbol, Rgb color);

  friend bool operator==(const TileCatalog&, const TileCatalog&) = default;

 private:
  std::vector<char> symbols_;
  std::vector<Rgb> colors_;
};

// Parses a catalog manifest:
//   {"tiles": [{"symbol": "B", "color": [0, 0, 0]}, ...]}
// "color" may be omitted on every entry, or must be present on every entry.
TileCatalog parse_catalog_json(std::string_view json_text);
std::string catalog_to_json(const TileCatalog& catalog);

struct TileGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<TileId> cells;  // row-major, cells[y * width + x]
  bool periodic = true;

  TileGrid() = default;
  TileGrid(std::size_t w, std::size_t h, std::vector<TileId> c, bool is_periodic = true);

  std::size_t size() const { return cells.size(); }
  std::size_t index(std::size_t x, std::size_t y) const { return y * width + x; }
  TileId at(std::size_t x, std::size_t y) const { return cells[index(x, y)]; }

  friend bool operator==(const TileGrid&, const TileGrid&) = default;
};

// (center, north, east, south, west)
struct Neighborhood {
  TileId center = 0, north = 0, east = 0, south = 0, west = 0;
  friend auto operator<=>(const Neighborhood&, const Neighborhood&) = default;
};

struct AdjacencyModel {
  std::size_t num_tiles = 0;
  // right[t] / below[t]: sorted tiles allowed immediately right of / below t.
  std::vector<std::vector<TileId>> right;
  std::vector<std::vector<TileId>> below;
  std::vector<std::uint64_t> tile_counts;
  std::map<Neighborhood, std::uint64_t> neighborhood_counts;

  bool allows_right(TileId left, TileId r) const;
  bool allows_below(TileId top, TileId b) const;
  std::uint64_t total_tiles() const;
};

struct TileDistribution {
  std::vector<double> probs;
  double operator[](TileId t) const { return probs.at(t); }
  std::size_t size() const { return probs.size(); }
};

// One character per tile, one line per row. A trailing newline and '\r' line
// endings are accepted. Without a catalog, symbols are registered in
// first-appearance order.
std::pair<TileGrid, TileCatalog> parse_grid(std::string_view text,
                                            const std::optional<TileCatalog>& catalog = std::nullopt,
                                            bool periodic = true);

std::string format_grid(const TileGrid& grid, const TileCatalog& catalog);

// Adjacency sets and frequency tables of an example grid. Wraps around iff
// grid.periodic; on non-periodic grids neighborhoods are counted only at
// cells whose four neighbors are in bounds.
AdjacencyModel analyze(const TileGrid& grid, std::size_t num_tiles);
// Tile count taken as max(cell) + 1.
AdjacencyModel analyze(const TileGrid& grid);

TileDistribution tile_distribution(const AdjacencyModel& model);

}  // namespace yoro
