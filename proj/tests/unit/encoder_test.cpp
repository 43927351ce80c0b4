#include <gtest/gtest.h>

#include "enumerate.hpp"
#include "oracles.hpp"
#include "yoro/analysis.hpp"
#include "yoro/encoder.hpp"
#include "yoro/error.hpp"

using namespace yoro;

namespace {

AdjacencyModel full_model(std::size_t n) {
  AdjacencyModel m;
  m.num_tiles = n;
  std::vector<TileId> all(n);
  for (TileId t = 0; t < n; ++t) all[t] = t;
  m.right.assign(n, all);
  m.below.assign(n, all);
  m.tile_counts.assign(n, 1);
  return m;
}

EncodeOptions opts(std::size_t w, std::size_t h, bool periodic = true) { return {w, h, periodic, false, std::nullopt}; }

struct Families {
  std::size_t alo = 0, amo = 0, adjacency = 0;
};

// Classifies tile-level clauses by shape: all-positive is ALO, a pair of
// negatives is AMO, one negative head followed by positives is adjacency.
Families classify(const CnfFormula& f) {
  Families c;
  for (const auto& cl : f.clauses) {
    std::size_t neg = 0;
    for (auto l : cl) neg += l < 0;
    if (neg == 0)
      ++c.alo;
    else if (neg == 2 && cl.size() == 2)
      ++c.amo;
    else
      ++c.adjacency;
  }
  return c;
}

std::set<std::vector<Literal>> tilings_as_models(const std::vector<std::vector<TileId>>& tilings, std::size_t n) {
  std::set<std::vector<Literal>> out;
  for (const auto& g : tilings) {
    std::vector<Literal> m;
    for (std::size_t c = 0; c < g.size(); ++c)
      for (TileId t = 0; t < n; ++t) {
        int v = static_cast<int>(c * n + t + 1);
        m.push_back(g[c] == t ? v : -v);
      }
    out.insert(m);
  }
  return out;
}

}  // namespace

TEST(TileLevel, OneCellCounts) {
  auto enc = encode_tile_level(full_model(2), opts(1, 1));
  EXPECT_EQ(enc.formula.num_vars, 2);
  EXPECT_EQ(enc.formula.clauses.size(), 6u);
  auto c = classify(enc.formula);
  EXPECT_EQ(c.alo, 1u);
  EXPECT_EQ(c.amo, 1u);
  EXPECT_EQ(c.adjacency, 4u);
}

TEST(TileLevel, TwoByTwoCounts) {
  auto enc = encode_tile_level(full_model(2), opts(2, 2));
  EXPECT_EQ(enc.formula.num_vars, 8);
  auto c = classify(enc.formula);
  EXPECT_EQ(c.alo, 4u);
  EXPECT_EQ(c.amo, 4u);
  EXPECT_EQ(c.adjacency, 16u);
}

TEST(TileLevel, AmoIsPairwise) {
  auto enc = encode_tile_level(full_model(4), opts(1, 1));
  EXPECT_EQ(classify(enc.formula).amo, 6u);
}

TEST(TileLevel, NonPeriodicOmitsBorder) {
  auto enc = encode_tile_level(full_model(2), opts(2, 1, false));
  // Right clauses only from column 0; no below clauses at all.
  EXPECT_EQ(classify(enc.formula).adjacency, 2u);
  for (const auto& cl : enc.formula.clauses) {
    if (cl.size() == 3) {
      EXPECT_TRUE(cl[0] == -enc.tile_var(0, 0, 0) || cl[0] == -enc.tile_var(0, 0, 1));
    }
  }
}

TEST(TileLevel, WarnsOnUnusableTile) {
  AdjacencyModel m = full_model(2);
  m.right[1].clear();
  auto enc = encode_tile_level(m, opts(2, 2));
  EXPECT_FALSE(enc.warnings.empty());
}

TEST(TileLevel, ModelSetEqualsValidTilings) {
  for (auto name : {"three_tile.txt", "striped_4x4.txt", "black_white.txt"}) {
    auto [g, cat] = parse_grid(oracle::read_fixture(name));
    auto m = analyze(g);
    for (bool periodic : {true, false}) {
      for (std::size_t w = 1; w <= 3; ++w) {
        for (std::size_t h = 1; h <= 3; ++h) {
          SCOPED_TRACE(std::string(name) + " " + std::to_string(w) + "x" + std::to_string(h) +
                       (periodic ? " periodic" : " bounded"));
          auto enc = encode_tile_level(m, opts(w, h, periodic));
          auto expected = tilings_as_models(oracle::valid_tilings(m, w, h, periodic), m.num_tiles);
          EXPECT_EQ(oracle::solver_models(enc.formula), expected);
        }
      }
    }
  }
}

TEST(Neighborhood, OneObservedNeighborhood) {
  auto [g, cat] = parse_grid("B");
  auto m = analyze(g);
  ASSERT_EQ(m.neighborhood_counts.size(), 1u);
  auto base = encode_tile_level(m, opts(3, 3));
  EncodeOptions o = opts(3, 3);
  o.neighborhood_level = true;
  auto enc = encode_neighborhood_level(m, o);
  EXPECT_EQ(enc.formula.num_vars - base.formula.num_vars, 9);
  EXPECT_EQ(enc.formula.clauses.size() - base.formula.clauses.size(), 45u);
}

TEST(Neighborhood, NoneObservedIsTileLevel) {
  auto m = full_model(2);
  EncodeOptions o = opts(2, 2);
  o.neighborhood_level = true;
  auto enc = encode_neighborhood_level(m, o);
  auto base = encode_tile_level(m, opts(2, 2));
  EXPECT_EQ(enc.formula, base.formula);
}

TEST(Neighborhood, RequiresPeriodic) {
  auto [g, cat] = parse_grid(oracle::read_fixture("striped_4x4.txt"));
  EncodeOptions o = opts(4, 4, false);
  o.neighborhood_level = true;
  EXPECT_THROW(encode_neighborhood_level(analyze(g), o), InvalidArgument);
}

TEST(Neighborhood, TrueVarForcesFiveTiles) {
  auto [g, cat] = parse_grid(oracle::read_fixture("three_tile.txt"));
  auto m = analyze(g);
  EncodeOptions o = opts(3, 3);
  o.neighborhood_level = true;
  auto enc = encode_neighborhood_level(m, o);
  for (int v = 1; v <= enc.registry.size(); ++v) {
    const auto* nv = std::get_if<NeighborhoodAssign>(&enc.registry.at(v));
    if (!nv) continue;
    CnfFormula f = enc.formula;
    f.add_clause({v});
    auto r = solve(f);
    ASSERT_TRUE(r.sat());
    auto at = [&](std::size_t x, std::size_t y, TileId t) { return r.model[enc.tile_var(x % 3, y % 3, t) - 1] > 0; };
    EXPECT_TRUE(at(nv->x, nv->y, nv->nb.center));
    EXPECT_TRUE(at(nv->x, nv->y + 2, nv->nb.north));
    EXPECT_TRUE(at(nv->x + 1, nv->y, nv->nb.east));
    EXPECT_TRUE(at(nv->x, nv->y + 1, nv->nb.south));
    EXPECT_TRUE(at(nv->x + 2, nv->y, nv->nb.west));
  }
}

TEST(Neighborhood, ProjectionEqualsTileLevel) {
  auto [g, cat] = parse_grid(oracle::read_fixture("three_tile.txt"));
  auto m = analyze(g);
  for (std::size_t w = 1; w <= 3; ++w) {
    EncodeOptions o = opts(w, 2);
    auto base = encode_tile_level(m, o);
    o.neighborhood_level = true;
    auto enc = encode_neighborhood_level(m, o);
    EXPECT_EQ(oracle::solver_models(enc.formula, base.formula.num_vars), oracle::solver_models(base.formula));
  }
}

TEST(Path, OneCellForcesDirt) {
  auto m = full_model(2);
  EncodeOptions o = opts(1, 1);
  o.path = PathSpec{{1}};
  auto enc = encode(m, o);
  auto models = oracle::solver_models(enc.formula, 2);
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(*models.begin(), (std::vector<Literal>{-1, 2}));
}

TEST(Path, TwoByTwoMatchesBruteForce) {
  auto m = full_model(2);
  EncodeOptions o = opts(2, 2);
  o.path = PathSpec{{1}};
  auto enc = encode(m, o);
  std::set<std::vector<Literal>> expected;
  std::size_t passing = 0;
  for (const auto& tiling : oracle::valid_tilings(m, 2, 2, true)) {
    if (oracle::brute_force_path(tiling, 2, 2, {1})) {
      ++passing;
      expected.merge(tilings_as_models({tiling}, 2));
    }
  }
  EXPECT_EQ(passing, 3u);  // both corners dirt and at least one middle cell
  EXPECT_EQ(oracle::solver_models(enc.formula, 8), expected);
}

TEST(Path, GoalUnitExcludesAllRock) {
  auto m = full_model(2);
  EncodeOptions o = opts(3, 3);
  o.path = PathSpec{{1}};
  auto enc = encode(m, o);
  ASSERT_FALSE(enc.formula.clauses.empty());
  const auto& goal = enc.formula.clauses.back();
  ASSERT_EQ(goal.size(), 1u);
  EXPECT_EQ(goal[0], enc.registry.id(Reachable{2, 2}));

  auto with_rock = enc.formula;
  for (std::size_t c = 0; c < 9; ++c) with_rock.add_clause({static_cast<Literal>(c * 2 + 1)});
  EXPECT_EQ(solve(with_rock).status, SolveStatus::Unsat);
  auto without_goal = with_rock;
  without_goal.clauses.erase(without_goal.clauses.end() - 10);
  EXPECT_TRUE(solve(without_goal).sat());
}

TEST(Path, AuxiliaryNumbering) {
  auto m = full_model(2);
  EncodeOptions o = opts(2, 2);
  o.path = PathSpec{{1}};
  auto enc = encode(m, o);
  EXPECT_EQ(enc.registry.id(Reachable{0, 0}), 9);
  EXPECT_EQ(enc.registry.id(IsDirt{0, 0}), 13);
  EXPECT_EQ(enc.formula.num_vars, 16);
}

TEST(Path, Rejected) {
  auto m = full_model(2);
  EncodeOptions o = opts(2, 2);
  o.path = PathSpec{{}};
  EXPECT_THROW(encode(m, o), InvalidArgument);
  o.path = PathSpec{{5}};
  EXPECT_THROW(encode(m, o), InvalidArgument);
}

TEST(Path, ModelSetMatchesVerifierOnFixtures) {
  auto [g, cat] = parse_grid(oracle::read_fixture("three_tile.txt"));
  auto m = analyze(g);
  for (TileId dirt = 0; dirt < 3; ++dirt) {
    for (bool periodic : {true, false}) {
      EncodeOptions o = opts(3, 3, periodic);
      o.path = PathSpec{{dirt}};
      auto enc = encode(m, o);
      std::set<std::vector<Literal>> expected;
      for (const auto& tiling : oracle::valid_tilings(m, 3, 3, periodic)) {
        TileGrid tg(3, 3, tiling, periodic);
        if (verify_dirt_path(tg, {dirt})) expected.merge(tilings_as_models({tiling}, 3));
      }
      EXPECT_EQ(oracle::solver_models(enc.formula, 27), expected);
    }
  }
}
