#include "yoro/encoder.hpp"

#include <sstream>

#include "yoro/error.hpp"

namespace yoro {

namespace {

void check_options(const AdjacencyModel& model, const EncodeOptions& opts) {
  if (opts.width < 1 || opts.height < 1) throw InvalidArgument("encode: width and height must be at least 1");
  if (model.num_tiles == 0) throw InvalidArgument("encode: adjacency model has no tiles");
  if (model.right.size() != model.num_tiles || model.below.size() != model.num_tiles)
    throw InvalidArgument("encode: adjacency lists do not match tile count");
}

void add_tile_clauses(Encoding& enc, const AdjacencyModel& model) {
  const std::size_t w = enc.width, h = enc.height, nt = enc.num_tiles;
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      for (TileId t = 0; t < nt; ++t) enc.formula.num_vars = enc.registry.add(TileAssign{x, y, t});

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      Clause alo;
      for (TileId t = 0; t < nt; ++t) alo.push_back(enc.tile_var(x, y, t));
      enc.formula.add_clause(std::move(alo));
      for (TileId a = 0; a < nt; ++a)
        for (TileId b = a + 1; b < nt; ++b) enc.formula.add_clause({-enc.tile_var(x, y, a), -enc.tile_var(x, y, b)});
    }
  }

  for (TileId t = 0; t < nt; ++t) {
    if (model.tile_counts.size() == nt && model.tile_counts[t] == 0) continue;
    if (enc.periodic && (model.right[t].empty() || model.below[t].empty())) {
      std::ostringstream msg;
      msg << "tile " << t << " has no allowed right or below neighbor; it cannot appear in a periodic output";
      enc.warnings.push_back(msg.str());
    }
  }

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      for (TileId t = 0; t < nt; ++t) {
        const int a = enc.tile_var(x, y, t);
        if (enc.periodic || x + 1 < w) {
          Clause c{-a};
          for (TileId r : model.right[t]) c.push_back(enc.tile_var((x + 1) % w, y, r));
          enc.formula.add_clause(std::move(c));
        }
        if (enc.periodic || y + 1 < h) {
          Clause c{-a};
          for (TileId b : model.below[t]) c.push_back(enc.tile_var(x, (y + 1) % h, b));
          enc.formula.add_clause(std::move(c));
        }
      }
    }
  }
}

Encoding make_encoding(const AdjacencyModel& model, const EncodeOptions& opts) {
  Encoding enc;
  enc.width = opts.width;
  enc.height = opts.height;
  enc.num_tiles = model.num_tiles;
  enc.periodic = opts.periodic;
  return enc;
}

}  // namespace

Encoding encode_tile_level(const AdjacencyModel& model, const EncodeOptions& opts) {
  check_options(model, opts);
  Encoding enc = make_encoding(model, opts);
  add_tile_clauses(enc, model);
  return enc;
}

Encoding encode_neighborhood_level(const AdjacencyModel& model, const EncodeOptions& opts) {
  check_options(model, opts);
  if (!opts.periodic) throw InvalidArgument("encode: neighborhood-level encoding requires periodic boundaries");
  Encoding enc = make_encoding(model, opts);
  add_tile_clauses(enc, model);

  const std::size_t w = enc.width, h = enc.height;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t xe = (x + 1) % w, xw = (x + w - 1) % w;
      const std::size_t ys = (y + 1) % h, yn = (y + h - 1) % h;
      for (const auto& [nb, count] : model.neighborhood_counts) {
        if (count == 0) continue;
        const int v = enc.formula.new_var();
        if (enc.registry.add(NeighborhoodAssign{x, y, nb}) != v)
          throw std::logic_error("encode: registry and formula numbering diverged");
        enc.formula.add_clause({-v, enc.tile_var(x, y, nb.center)});
        enc.formula.add_clause({-v, enc.tile_var(x, yn, nb.north)});
        enc.formula.add_clause({-v, enc.tile_var(xe, y, nb.east)});
        enc.formula.add_clause({-v, enc.tile_var(x, ys, nb.south)});
        enc.formula.add_clause({-v, enc.tile_var(xw, y, nb.west)});
      }
    }
  }
  return enc;
}

void encode_path_constraint(Encoding& enc, const PathSpec& spec) {
  if (spec.path_tiles.empty()) throw InvalidArgument("encode: path constraint needs at least one path tile");
  for (TileId t : spec.path_tiles)
    if (t >= enc.num_tiles) throw InvalidArgument("encode: path tile outside catalog");

  const std::size_t w = enc.width, h = enc.height;
  auto& f = enc.formula;
  std::vector<int> reach(w * h), dirt(w * h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      reach[y * w + x] = f.new_var();
      enc.registry.add(Reachable{x, y});
    }
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      dirt[y * w + x] = f.new_var();
      enc.registry.add(IsDirt{x, y});
    }
  if (enc.registry.size() != f.num_vars) throw std::logic_error("encode: registry and formula numbering diverged");

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const int d = dirt[y * w + x];
      // IsDirt <-> OR of path tiles at the cell.
      Clause any{-d};
      for (TileId t : spec.path_tiles) {
        any.push_back(enc.tile_var(x, y, t));
        f.add_clause({-enc.tile_var(x, y, t), d});
      }
      f.add_clause(std::move(any));

      const int r = reach[y * w + x];
      f.add_clause({-r, d});
      if (x == 0 && y == 0) {
        f.add_clause({-d, r});
      } else if (y == 0 || x == 0) {
        const int prev = y == 0 ? reach[x - 1] : reach[(y - 1) * w];
        f.add_clause({-r, prev});
        f.add_clause({-d, -prev, r});
      } else {
        const int left = reach[y * w + x - 1];
        const int up = reach[(y - 1) * w + x];
        f.add_clause({-r, left, up});
        f.add_clause({-d, -left, r});
        f.add_clause({-d, -up, r});
      }
    }
  }
  f.add_clause({reach[w * h - 1]});
}

Encoding encode(const AdjacencyModel& model, const EncodeOptions& opts) {
  Encoding enc = opts.neighborhood_level ? encode_neighborhood_level(model, opts) : encode_tile_level(model, opts);
  if (opts.path) encode_path_constraint(enc, *opts.path);
  return enc;
}

}  // namespace yoro
