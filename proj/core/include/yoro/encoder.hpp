#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "yoro/cnf.hpp"
#include "yoro/tilegrid.hpp"

namespace yoro {

// Monotone (right/down) path of path tiles from (0,0) to (width-1, height-1).
struct PathSpec {
  std::set<TileId> path_tiles;
};

struct EncodeOptions {
  std::size_t width = 0;
  std::size_t height = 0;
  bool periodic = true;
  bool neighborhood_level = false;
  std::optional<PathSpec> path;
};

struct Encoding {
  CnfFormula formula;
  VariableRegistry registry;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t num_tiles = 0;
  bool periodic = true;
  std::vector<std::string> warnings;

  // Tile variables are registered first, cell-major then tile index.
  int tile_var(std::size_t x, std::size_t y, TileId t) const {
    return static_cast<int>((y * width + x) * num_tiles + t + 1);
  }
};

// At-least-one and pairwise at-most-one per cell, plus right/below adjacency
// clauses (wrapping iff periodic, omitted at the border otherwise).
Encoding encode_tile_level(const AdjacencyModel& model, const EncodeOptions& opts);

// Tile level plus one NeighborhoodAssign variable per (cell, observed
// neighborhood), each implying its five tile variables. Periodic grids only.
Encoding encode_neighborhood_level(const AdjacencyModel& model, const EncodeOptions& opts);

// Appends Reachable and IsDirt variables with the recursive reachability
// biconditionals and the goal unit clause. The path never wraps.
void encode_path_constraint(Encoding& enc, const PathSpec& spec);

// Dispatches on opts: tile or neighborhood level, then the path if present.
Encoding encode(const AdjacencyModel& model, const EncodeOptions& opts);

}  // namespace yoro
