#include "yoro/tilegrid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "yoro/error.hpp"

namespace yoro {

namespace {

// Fallback palette for catalogs without colors; index 0 is dark so that the
// conventional first tile of a black/white example renders black.
constexpr std::array<Rgb, 12> kPalette = {{
    {24, 24, 24},
    {228, 228, 228},
    {200, 170, 110},
    {70, 140, 60},
    {40, 90, 180},
    {120, 120, 120},
    {160, 60, 40},
    {20, 80, 30},
    {230, 200, 60},
    {140, 80, 160},
    {60, 170, 170},
    {250, 140, 40},
}};

}  // namespace

TileCatalog::TileCatalog(std::vector<char> symbols, std::vector<Rgb> colors)
    : symbols_(std::move(symbols)), colors_(std::move(colors)) {
  if (!colors_.empty() && colors_.size() != symbols_.size())
    throw InvalidArgument("catalog: color count does not match symbol count");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols_.size(); ++j) {
      if (symbols_[i] == symbols_[j])
        throw InvalidArgument(std::string("catalog: duplicate symbol '") + symbols_[i] + "'");
    }
  }
}

Rgb TileCatalog::color(TileId t) const {
  if (has_colors()) return colors_.at(t);
  return kPalette[t % kPalette.size()];
}

std::optional<TileId> TileCatalog::find(char symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<TileId>(it - symbols_.begin());
}

TileId TileCatalog::add(char symbol) {
  if (has_colors()) throw InvalidArgument("catalog: colored catalog requires a color for new tiles");
  if (find(symbol)) throw InvalidArgument(std::string("catalog: duplicate symbol '") + symbol + "'");
  symbols_.push_back(symbol);
  return static_cast<TileId>(symbols_.size() - 1);
}

TileId TileCatalog::add(char symbol, Rgb color) {
  if (!has_colors() && !symbols_.empty())
    throw InvalidArgument("catalog: cannot add a colored tile to an uncolored catalog");
  if (find(symbol)) throw InvalidArgument(std::string("catalog: duplicate symbol '") + symbol + "'");
  symbols_.push_back(symbol);
  colors_.push_back(color);
  return static_cast<TileId>(symbols_.size() - 1);
}

TileCatalog parse_catalog_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("catalog: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tiles") || !doc["tiles"].is_array())
    throw FormatError("catalog: expected an object with a \"tiles\" array");

  std::vector<char> symbols;
  std::vector<Rgb> colors;
  std::size_t with_color = 0;
  for (const auto& entry : doc["tiles"]) {
    if (!entry.is_object() || !entry.contains("symbol") || !entry["symbol"].is_string())
      throw FormatError("catalog: every tile needs a string \"symbol\"");
    auto sym = entry["symbol"].get<std::string>();
    if (sym.size() != 1) throw FormatError("catalog: symbol must be exactly one character: \"" + sym + "\"");
    symbols.push_back(sym[0]);
    if (entry.contains("color")) {
      const auto& c = entry["color"];
      if (!c.is_array() || c.size() != 3) throw FormatError("catalog: color must be [r, g, b]");
      std::array<int, 3> v{};
      for (std::size_t i = 0; i < 3; ++i) {
        if (!c[i].is_number_integer()) throw FormatError("catalog: color components must be integers");
        v[i] = c[i].get<int>();
        if (v[i] < 0 || v[i] > 255) throw FormatError("catalog: color component out of range");
      }
      colors.push_back({static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
                        static_cast<std::uint8_t>(v[2])});
      ++with_color;
    }
  }
  if (with_color != 0 && with_color != symbols.size())
    throw FormatError("catalog: either every tile or no tile carries a color");
  try {
    return TileCatalog(std::move(symbols), std::move(colors));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

std::string catalog_to_json(const TileCatalog& catalog) {
  nlohmann::json tiles = nlohmann::json::array();
  for (TileId t = 0; t < catalog.size(); ++t) {
    nlohmann::json entry;
    entry["symbol"] = std::string(1, catalog.symbol(t));
    if (catalog.has_colors()) {
      auto c = catalog.color(t);
      entry["color"] = {c.r, c.g, c.b};
    }
    tiles.push_back(std::move(entry));
  }
  nlohmann::json doc;
  doc["tiles"] = std::move(tiles);
  return doc.dump(2) + "\n";
}

TileGrid::TileGrid(std::size_t w, std::size_t h, std::vector<TileId> c, bool is_periodic)
    : width(w), height(h), cells(std::move(c)), periodic(is_periodic) {
  if (cells.size() != width * height) throw InvalidArgument("grid: cell count does not equal width * height");
}

bool AdjacencyModel::allows_right(TileId left, TileId r) const {
  const auto& s = right.at(left);
  return std::binary_search(s.begin(), s.end(), r);
}

bool AdjacencyModel::allows_below(TileId top, TileId b) const {
  const auto& s = below.at(top);
  return std::binary_search(s.begin(), s.end(), b);
}

std::uint64_t AdjacencyModel::total_tiles() const {
  return std::accumulate(tile_counts.begin(), tile_counts.end(), std::uint64_t{0});
}

std::pair<TileGrid, TileCatalog> parse_grid(std::string_view text, const std::optional<TileCatalog>& catalog,
                                            bool periodic) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  // A trailing newline produces no extra row.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw FormatError("grid: input is empty");

  const std::size_t width = lines.front().size();
  if (width == 0) throw FormatError("grid: line 1 is empty");

  TileCatalog cat = catalog.value_or(TileCatalog{});
  const bool fixed = catalog.has_value();
  std::vector<TileId> cells;
  cells.reserve(width * lines.size());
  for (std::size_t y = 0; y < lines.size(); ++y) {
    if (lines[y].size() != width) {
      std::ostringstream msg;
      msg << "grid: line " << (y + 1) << " has length " << lines[y].size() << ", expected " << width;
      throw FormatError(msg.str());
    }
    for (std::size_t x = 0; x < width; ++x) {
      char c = lines[y][x];
      auto id = cat.find(c);
      if (!id) {
        if (fixed) {
          std::ostringstream msg;
          msg << "grid: unknown tile symbol '" << c << "' at line " << (y + 1) << ", column " << (x + 1);
          throw UnknownTileError(msg.str());
        }
        id = cat.add(c);
      }
      cells.push_back(*id);
    }
  }
  return {TileGrid(width, lines.size(), std::move(cells), periodic), std::move(cat)};
}

std::string format_grid(const TileGrid& grid, const TileCatalog& catalog) {
  std::string out;
  out.reserve((grid.width + 1) * grid.height);
  for (std::size_t y = 0; y < grid.height; ++y) {
    for (std::size_t x = 0; x < grid.width; ++x) out.push_back(catalog.symbol(grid.at(x, y)));
    out.push_back('\n');
  }
  return out;
}

AdjacencyModel analyze(const TileGrid& grid) {
  std::size_t n = 0;
  for (TileId t : grid.cells) n = std::max<std::size_t>(n, t + 1);
  return analyze(grid, n);
}

AdjacencyModel analyze(const TileGrid& grid, std::size_t num_tiles) {
  if (grid.cells.empty()) throw InvalidArgument("analyze: grid is empty");
  const std::size_t w = grid.width, h = grid.height;
  std::vector<std::vector<bool>> right(num_tiles, std::vector<bool>(num_tiles, false));
  std::vector<std::vector<bool>> below = right;

  AdjacencyModel model;
  model.num_tiles = num_tiles;
  model.tile_counts.assign(num_tiles, 0);

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      TileId t = grid.at(x, y);
      if (t >= num_tiles) throw InvalidArgument("analyze: cell tile outside catalog");
      ++model.tile_counts[t];
      if (grid.periodic || x + 1 < w) right[t][grid.at((x + 1) % w, y)] = true;
      if (grid.periodic || y + 1 < h) below[t][grid.at(x, (y + 1) % h)] = true;

      bool interior = x > 0 && y > 0 && x + 1 < w && y + 1 < h;
      if (grid.periodic || interior) {
        Neighborhood nb{t, grid.at(x, (y + h - 1) % h), grid.at((x + 1) % w, y), grid.at(x, (y + 1) % h),
                        grid.at((x + w - 1) % w, y)};
        ++model.neighborhood_counts[nb];
      }
    }
  }

  auto to_lists = [num_tiles](const std::vector<std::vector<bool>>& m) {
    std::vector<std::vector<TileId>> out(num_tiles);
    for (TileId a = 0; a < num_tiles; ++a)
      for (TileId b = 0; b < num_tiles; ++b)
        if (m[a][b]) out[a].push_back(b);
    return out;
  };
  model.right = to_lists(right);
  model.below = to_lists(below);
  return model;
}

TileDistribution tile_distribution(const AdjacencyModel& model) {
  const auto total = model.total_tiles();
  if (total == 0) throw InvalidArgument("tile_distribution: model has no tiles");
  TileDistribution d;
  d.probs.reserve(model.tile_counts.size());
  for (auto c : model.tile_counts) d.probs.push_back(static_cast<double>(c) / static_cast<double>(total));
  return d;
}

}  // namespace yoro
