#include "yoro/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "yoro/error.hpp"

namespace yoro {

TileDistribution tile_frequencies(const TileGrid& grid, std::size_t num_tiles) {
  if (grid.cells.empty()) throw InvalidArgument("tile_frequencies: grid is empty");
  std::vector<std::uint64_t> counts(num_tiles, 0);
  for (TileId t : grid.cells) {
    if (t >= num_tiles) throw InvalidArgument("tile_frequencies: tile outside catalog");
    ++counts[t];
  }
  TileDistribution d;
  for (auto c : counts) d.probs.push_back(static_cast<double>(c) / static_cast<double>(grid.cells.size()));
  return d;
}

Distance l1_distance(const TileDistribution& p, const TileDistribution& q) {
  if (p.size() != q.size()) throw InvalidArgument("l1_distance: distributions have different supports");
  Distance d;
  for (std::size_t i = 0; i < p.size(); ++i) d.l1 += std::abs(p.probs[i] - q.probs[i]);
  d.tv = d.l1 / 2.0;
  return d;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> find_dirt_path(const TileGrid& grid,
                                                                               const std::set<TileId>& path_tiles) {
  const std::size_t w = grid.width, h = grid.height;
  if (grid.cells.empty()) throw InvalidArgument("find_dirt_path: grid is empty");
  std::vector<char> reach(w * h, 0);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (!path_tiles.contains(grid.at(x, y))) continue;
      bool from = (x == 0 && y == 0) || (x > 0 && reach[y * w + x - 1]) || (y > 0 && reach[(y - 1) * w + x]);
      reach[y * w + x] = from ? 1 : 0;
    }
  }
  if (!reach[w * h - 1]) return std::nullopt;
  std::vector<std::pair<std::size_t, std::size_t>> path;
  std::size_t x = w - 1, y = h - 1;
  path.emplace_back(x, y);
  while (x != 0 || y != 0) {
    if (x > 0 && reach[y * w + x - 1])
      --x;
    else
      --y;
    path.emplace_back(x, y);
  }
  return std::vector(path.rbegin(), path.rend());
}

bool verify_dirt_path(const TileGrid& grid, const std::set<TileId>& path_tiles) {
  return find_dirt_path(grid, path_tiles).has_value();
}

bool verify_adjacency(const TileGrid& grid, const AdjacencyModel& model) {
  const std::size_t w = grid.width, h = grid.height;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      TileId t = grid.at(x, y);
      if (t >= model.num_tiles) return false;
      if ((grid.periodic || x + 1 < w) && !model.allows_right(t, grid.at((x + 1) % w, y))) return false;
      if ((grid.periodic || y + 1 < h) && !model.allows_below(t, grid.at(x, (y + 1) % h))) return false;
    }
  }
  return true;
}

TileDistribution aggregate_frequencies(const std::vector<RunRecord>& runs, std::size_t num_tiles) {
  std::vector<double> counts(num_tiles, 0.0);
  double cells = 0.0;
  for (const auto& run : runs) {
    for (TileId t : run.grid.cells) {
      if (t >= num_tiles) throw InvalidArgument("aggregate_frequencies: tile outside catalog");
      counts[t] += 1.0;
    }
    cells += static_cast<double>(run.grid.cells.size());
  }
  if (cells == 0.0) throw InvalidArgument("aggregate_frequencies: no cells");
  TileDistribution d;
  for (double c : counts) d.probs.push_back(c / cells);
  return d;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string batch_report(const std::vector<RunRecord>& runs, const TileDistribution& target,
                         const TileCatalog& catalog, const BatchReportOptions& options) {
  const std::size_t nt = catalog.size();
  if (target.size() != nt) throw InvalidArgument("batch_report: target does not match catalog");

  std::string out = "seed,width,height";
  for (TileId t = 0; t < nt; ++t) {
    out += ",freq_";
    out.push_back(catalog.symbol(t));
  }
  out += ",l1,tv,decisions,propagations,conflicts";
  if (options.include_timing) out += ",elapsed_ms";
  out.push_back('\n');

  double dec = 0, prop = 0, conf = 0, ms = 0;
  for (const auto& run : runs) {
    auto freq = tile_frequencies(run.grid, nt);
    auto dist = l1_distance(freq, target);
    out += std::to_string(run.seed) + "," + std::to_string(run.grid.width) + "," + std::to_string(run.grid.height);
    for (double p : freq.probs) out += "," + fixed6(p);
    out += "," + fixed6(dist.l1) + "," + fixed6(dist.tv);
    out += "," + std::to_string(run.stats.decisions) + "," + std::to_string(run.stats.propagations) + "," +
           std::to_string(run.stats.conflicts);
    const double elapsed_ms = run.stats.elapsed.count() * 1000.0;
    if (options.include_timing) out += "," + fixed6(elapsed_ms);
    out.push_back('\n');
    dec += static_cast<double>(run.stats.decisions);
    prop += static_cast<double>(run.stats.propagations);
    conf += static_cast<double>(run.stats.conflicts);
    ms += elapsed_ms;
  }

  if (!runs.empty()) {
    const double n = static_cast<double>(runs.size());
    auto freq = aggregate_frequencies(runs, nt);
    auto dist = l1_distance(freq, target);
    out += "aggregate,,";
    for (double p : freq.probs) out += "," + fixed6(p);
    out += "," + fixed6(dist.l1) + "," + fixed6(dist.tv);
    out += "," + fixed6(dec / n) + "," + fixed6(prop / n) + "," + fixed6(conf / n);
    if (options.include_timing) out += "," + fixed6(ms / n);
    out.push_back('\n');
  }
  return out;
}

}  // namespace yoro
