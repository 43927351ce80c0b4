#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "yoro/solver.hpp"
#include "yoro/tilegrid.hpp"

namespace yoro {

// Empirical per-tile fraction over a catalog of num_tiles tiles.
TileDistribution tile_frequencies(const TileGrid& grid, std::size_t num_tiles);

struct Distance {
  double l1 = 0.0;
  double tv = 0.0;  // l1 / 2
};

// Throws InvalidArgument when the supports differ in size.
Distance l1_distance(const TileDistribution& p, const TileDistribution& q);

// True iff a right/down path of path tiles joins (0,0) to (W-1,H-1).
bool verify_dirt_path(const TileGrid& grid, const std::set<TileId>& path_tiles);

// One such path, top-left first, or nullopt.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> find_dirt_path(const TileGrid& grid,
                                                                               const std::set<TileId>& path_tiles);

// True iff every horizontal and vertical neighbor pair is allowed by the
// model (wrapping iff grid.periodic).
bool verify_adjacency(const TileGrid& grid, const AdjacencyModel& model);

struct RunRecord {
  std::uint64_t seed = 0;
  TileGrid grid;
  SolveStats stats;
};

struct BatchReportOptions {
  // Adds an elapsed_ms column; off by default so reports are reproducible.
  bool include_timing = false;
};

// CSV with header
//   seed,width,height,freq_<symbol>...,l1,tv,decisions,propagations,conflicts[,elapsed_ms]
// one row per run, then an "aggregate" row: cell-weighted frequencies, their
// distance to the target, and mean counters.
std::string batch_report(const std::vector<RunRecord>& runs, const TileDistribution& target,
                         const TileCatalog& catalog, const BatchReportOptions& options = {});

// Cell-weighted mean of per-run tile frequencies.
TileDistribution aggregate_frequencies(const std::vector<RunRecord>& runs, std::size_t num_tiles);

}  // namespace yoro
