#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "oracles.hpp"
#include "yoro/encoder.hpp"
#include "yoro/error.hpp"
#include "yoro/ordering.hpp"

using namespace yoro;

namespace {

std::size_t argmax(const std::vector<double>& w, GumbelRng& rng) {
  std::size_t best = 0;
  double best_score = -1e300;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double s = gumbel_score(w[i], rng);
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

AdjacencyModel model_of(const std::string& fixture) {
  auto [g, cat] = parse_grid(oracle::read_fixture(fixture));
  return analyze(g);
}

constexpr int kTrials = 100000;

}  // namespace

TEST(GumbelRng, Reproducible) {
  GumbelRng a(42), b(42), c(43);
  std::vector<double> da, db, dc;
  for (int i = 0; i < 100; ++i) {
    da.push_back(a.uniform());
    db.push_back(b.uniform());
    dc.push_back(c.uniform());
  }
  EXPECT_EQ(da, db);
  EXPECT_NE(da, dc);
}

TEST(GumbelRng, SubstreamsIndependentOfDrawOrder) {
  GumbelRng root(7);
  auto s5 = root.substream(5);
  auto first = s5.uniform();
  GumbelRng other(7);
  for (int i = 0; i < 10; ++i) other.uniform();
  auto again = other.substream(5);
  EXPECT_EQ(again.uniform(), first);
  EXPECT_NE(root.substream(6).uniform(), first);
}

TEST(GumbelRng, UniformClamped) {
  GumbelRng r(1);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform();
    EXPECT_GE(u, GumbelRng::kEpsilon);
    EXPECT_LE(u, 1.0 - GumbelRng::kEpsilon);
  }
}

TEST(GumbelScore, Errors) {
  GumbelRng r(1);
  EXPECT_THROW(gumbel_score(0.0, r), InvalidArgument);
  EXPECT_THROW(gumbel_score(-1.0, r), InvalidArgument);
}

TEST(GumbelScore, SingleClass) {
  GumbelRng r(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(argmax({2.5}, r), 0u);
}

TEST(GumbelScore, ThreeToOne) {
  GumbelRng r(11);
  std::vector<double> counts(2, 0);
  for (int i = 0; i < kTrials; ++i) ++counts[argmax({3, 1}, r)];
  EXPECT_NEAR(counts[0] / kTrials, 0.75, 0.01);
  EXPECT_GT(oracle::chi_square_p(counts, {0.75, 0.25}), 0.001);
}

TEST(GumbelScore, Uniform4) {
  GumbelRng r(12);
  std::vector<double> counts(4, 0);
  for (int i = 0; i < kTrials; ++i) ++counts[argmax({1, 1, 1, 1}, r)];
  for (double c : counts) EXPECT_NEAR(c / kTrials, 0.25, 0.01);
}

TEST(Suborder, Basics) {
  GumbelRng r(1);
  EXPECT_EQ(sample_cell_suborder(std::vector<double>{0.3}, r), std::vector<std::size_t>{0});
  EXPECT_THROW(sample_cell_suborder(std::vector<double>{}, r), InvalidArgument);
  EXPECT_THROW(sample_cell_suborder(std::vector<double>{1.0, 0.0}, r), InvalidArgument);
}

TEST(Suborder, ProductFormOracleTable) {
  // Frozen from the sequential sampling-without-replacement formula.
  const std::vector<double> w{4, 2, 1};
  EXPECT_NEAR(oracle::without_replacement_probability(w, {0, 1, 2}), 8.0 / 21, 1e-12);
  EXPECT_NEAR(oracle::without_replacement_probability(w, {0, 2, 1}), 4.0 / 21, 1e-12);
  EXPECT_NEAR(oracle::without_replacement_probability(w, {1, 0, 2}), 8.0 / 35, 1e-12);
  EXPECT_NEAR(oracle::without_replacement_probability(w, {1, 2, 0}), 2.0 / 35, 1e-12);
  EXPECT_NEAR(oracle::without_replacement_probability(w, {2, 0, 1}), 2.0 / 21, 1e-12);
  EXPECT_NEAR(oracle::without_replacement_probability(w, {2, 1, 0}), 1.0 / 21, 1e-12);
}

class SuborderDistribution : public ::testing::TestWithParam<std::vector<double>> {};

TEST_P(SuborderDistribution, MatchesWithoutReplacement) {
  const auto w = GetParam();
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::map<std::vector<std::size_t>, double> seen;
  GumbelRng r(99);
  for (int i = 0; i < kTrials; ++i) ++seen[sample_cell_suborder(w, r)];

  std::vector<double> observed, expected;
  for (const auto& p : perms) {
    observed.push_back(seen[p]);
    expected.push_back(oracle::without_replacement_probability(w, p));
    EXPECT_NEAR(seen[p] / kTrials, expected.back(), 0.01);
  }
  EXPECT_GT(oracle::chi_square_p(observed, expected), 0.001);
}

INSTANTIATE_TEST_SUITE_P(Weights, SuborderDistribution,
                         ::testing::Values(std::vector<double>{3, 1}, std::vector<double>{4, 2, 1},
                                           std::vector<double>{1, 1, 1}, std::vector<double>{5, 3, 1.5, 0.5}));

TEST(BuildOrdering, TrivialIsIdentity) {
  auto m = model_of("striped_4x4.txt");
  auto enc = encode(m, {2, 2, true, false, std::nullopt});
  auto o = build_ordering(enc, m, OrderingStrategy::Trivial, GumbelRng(5));
  EXPECT_EQ(o.order, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(o.num_decision_vars, 8u);
}

TEST(BuildOrdering, StripedMeanWhiteFirstCells) {
  auto m = model_of("striped_4x4.txt");
  auto enc = encode(m, {4, 4, true, false, std::nullopt});
  std::uint64_t white_first = 0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    auto o = build_ordering(enc, m, OrderingStrategy::TileFrequency, GumbelRng(static_cast<std::uint64_t>(s)));
    for (std::size_t c = 0; c < 16; ++c) white_first += o.order[2 * c] == enc.tile_var(c % 4, c / 4, 1);
  }
  EXPECT_NEAR(static_cast<double>(white_first) / draws, 4.0, 0.1);
}

TEST(BuildOrdering, CellsStayRowMajor) {
  auto m = model_of("overworld.txt");
  auto enc = encode(m, {5, 4, true, false, std::nullopt});
  for (auto s : {OrderingStrategy::Trivial, OrderingStrategy::UniformCell, OrderingStrategy::TileFrequency}) {
    auto o = build_ordering(enc, m, s, GumbelRng(8));
    for (std::size_t k = 0; k < o.order.size(); ++k) {
      const auto& tv = std::get<TileAssign>(enc.registry.at(o.order[k]));
      EXPECT_EQ(tv.y * 5 + tv.x, k / m.num_tiles);
    }
  }
}

TEST(BuildOrdering, NeighborhoodVarsPrecedeTilesAndAuxiliariesLast) {
  auto m = model_of("overworld.txt");
  EncodeOptions opts{6, 6, true, true, PathSpec{{2}}};
  auto enc = encode(m, opts);
  for (auto s : {OrderingStrategy::NeighborhoodFrequency, OrderingStrategy::UniformCell, OrderingStrategy::Trivial}) {
    auto o = build_ordering(enc, m, s, GumbelRng(3));
    std::vector<int> sorted = o.order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> all(static_cast<std::size_t>(enc.formula.num_vars));
    std::iota(all.begin(), all.end(), 1);
    ASSERT_EQ(sorted, all);

    std::size_t last_cell = 0;
    bool seen_tile = false;
    for (std::size_t k = 0; k < o.order.size(); ++k) {
      const auto& sv = enc.registry.at(o.order[k]);
      if (k >= o.num_decision_vars) {
        EXPECT_FALSE(is_decision_var(sv));
        continue;
      }
      ASSERT_TRUE(is_decision_var(sv));
      std::size_t cell;
      bool tile = std::holds_alternative<TileAssign>(sv);
      if (tile) {
        const auto& t = std::get<TileAssign>(sv);
        cell = t.y * 6 + t.x;
      } else {
        const auto& n = std::get<NeighborhoodAssign>(sv);
        cell = n.y * 6 + n.x;
      }
      if (cell != last_cell) {
        EXPECT_EQ(cell, last_cell + 1);
        last_cell = cell;
        seen_tile = false;
      }
      if (tile)
        seen_tile = true;
      else
        EXPECT_FALSE(seen_tile) << "neighborhood var after a tile var in cell " << cell;
    }
  }
}

TEST(BuildOrdering, AuxiliariesInRegistryOrder) {
  auto m = model_of("overworld.txt");
  auto enc = encode(m, {3, 3, true, false, PathSpec{{2}}});
  auto o = build_ordering(enc, m, OrderingStrategy::TileFrequency, GumbelRng(4));
  ASSERT_EQ(o.num_decision_vars, 45u);
  for (std::size_t k = o.num_decision_vars; k < o.order.size(); ++k) EXPECT_EQ(o.order[k], static_cast<int>(k + 1));
}

TEST(BuildOrdering, FrequencyErrors) {
  auto m = model_of("striped_4x4.txt");
  auto enc = encode(m, {2, 2, true, false, std::nullopt});
  EXPECT_THROW(build_ordering(enc, m, OrderingStrategy::NeighborhoodFrequency, GumbelRng(1)), InvalidArgument);
  auto zero = m;
  zero.tile_counts[1] = 0;
  EXPECT_THROW(build_ordering(enc, zero, OrderingStrategy::TileFrequency, GumbelRng(1)), InvalidArgument);
  EXPECT_NO_THROW(build_ordering(enc, zero, OrderingStrategy::UniformCell, GumbelRng(1)));
}

TEST(BuildOrdering, SeedDeterminism) {
  auto m = model_of("overworld.txt");
  auto enc = encode(m, {8, 8, true, false, std::nullopt});
  auto a = build_ordering(enc, m, OrderingStrategy::TileFrequency, GumbelRng(77));
  auto b = build_ordering(enc, m, OrderingStrategy::TileFrequency, GumbelRng(77));
  auto c = build_ordering(enc, m, OrderingStrategy::TileFrequency, GumbelRng(78));
  EXPECT_EQ(a.order, b.order);
  EXPECT_NE(a.order, c.order);
}

TEST(StrategyNames, RoundTrip) {
  for (auto s : {OrderingStrategy::Trivial, OrderingStrategy::UniformCell, OrderingStrategy::TileFrequency,
                 OrderingStrategy::NeighborhoodFrequency})
    EXPECT_EQ(parse_ordering_strategy(to_string(s)), s);
  EXPECT_THROW(parse_ordering_strategy("random"), InvalidArgument);
}

TEST(ApplyOrdering, Identity) {
  CnfFormula f{3, {{1, -2}, {2, 3}, {-1}}};
  std::vector<int> id{1, 2, 3};
  auto r = apply_ordering(f, id);
  EXPECT_EQ(r.formula, f);
}

TEST(ApplyOrdering, Swap) {
  CnfFormula f{2, {{1, 2}, {-1, -2}}};
  std::vector<int> swap{2, 1};
  auto r = apply_ordering(f, swap);
  EXPECT_EQ(r.formula.clauses, (std::vector<Clause>{{2, 1}, {-2, -1}}));
  EXPECT_EQ(r.old_to_new[1], 2);
  EXPECT_EQ(r.new_to_old[1], 2);
}

TEST(ApplyOrdering, RoundTripWithInverse) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto f = oracle::random_formula(rng, 12, 20, 4);
    std::vector<int> order(static_cast<std::size_t>(f.num_vars));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    auto r = apply_ordering(f, order);
    std::vector<int> inverse(r.old_to_new.begin() + 1, r.old_to_new.end());
    EXPECT_EQ(apply_ordering(r.formula, inverse).formula, f);
    for (int v = 1; v <= f.num_vars; ++v) EXPECT_EQ(r.new_to_old[r.old_to_new[v]], v);
  }
}

TEST(ApplyOrdering, PreservesModelSet) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    auto f = oracle::random_formula(rng, 10, 30, 3);
    std::vector<int> order(static_cast<std::size_t>(f.num_vars));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    auto r = apply_ordering(f, order);
    std::set<std::uint64_t> mapped;
    for (auto m : oracle::truth_table_models(r.formula)) {
      std::vector<Literal> model;
      for (int v = 1; v <= f.num_vars; ++v) model.push_back((m >> (v - 1)) & 1U ? v : -v);
      mapped.insert(oracle::to_mask(r.to_original(model)));
    }
    EXPECT_EQ(mapped, oracle::truth_table_models(f));
  }
}

TEST(ApplyOrdering, RejectsNonPermutation) {
  CnfFormula f{3, {{1, 2, 3}}};
  EXPECT_THROW(apply_ordering(f, std::vector<int>{1, 1, 2}), InvalidArgument);
  EXPECT_THROW(apply_ordering(f, std::vector<int>{1, 2}), InvalidArgument);
  EXPECT_THROW(apply_ordering(f, std::vector<int>{1, 2, 4}), InvalidArgument);
}

TEST(ApplyOrdering, ToOriginalDropsPadding) {
  CnfFormula f{2, {{1, 2}}};
  auto r = apply_ordering(f, std::vector<int>{2, 1});
  std::vector<Literal> model{1, -2, 3};
  EXPECT_EQ(r.to_original(model), (std::vector<Literal>{-1, 2}));
}

TEST(FormatOrdering, OneVarPerLine) {
  DecisionOrdering o;
  o.order = {3, 1, 2};
  EXPECT_EQ(format_ordering(o), "3\n1\n2\n");
}
