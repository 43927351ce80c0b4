#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yoro/cnf.hpp"
#include "yoro/encoder.hpp"
#include "yoro/tilegrid.hpp"

namespace yoro {

// Reproducible source of uniform and Gumbel(0,1) draws.
//
// Draws come from std::mt19937_64, whose output sequence is fixed by the
// standard, converted to doubles with explicit bit arithmetic (the standard
// distributions are not portable). Substreams are keyed by an index through a
// SplitMix64 finalizer so each grid cell gets its own stream regardless of
// iteration order.
class GumbelRng {
 public:
  static constexpr double kEpsilon = 1e-12;

  explicit GumbelRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  GumbelRng substream(std::uint64_t index) const;

  // Uniform in [kEpsilon, 1 - kEpsilon].
  double uniform();
  // -log(-log(u)).
  double gumbel();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// log(weight) + Gumbel noise. Throws InvalidArgument unless weight > 0.
double gumbel_score(double weight, GumbelRng& rng);

// Indices sorted by decreasing Gumbel score; ties go to the lower index.
// Distributed like repeated weighted sampling without replacement.
std::vector<std::size_t> sample_cell_suborder(std::span<const double> weights, GumbelRng& rng);

enum class OrderingStrategy { Trivial, UniformCell, TileFrequency, NeighborhoodFrequency };

std::string_view to_string(OrderingStrategy s);
// Accepts the CLI names: trivial, uniform, tile-freq, nbhd-freq.
OrderingStrategy parse_ordering_strategy(std::string_view name);

struct DecisionOrdering {
  // order[k] is the original variable decided k-th; covers every variable.
  std::vector<int> order;
  // Leading entries of `order` that are decision variables.
  std::size_t num_decision_vars = 0;
  OrderingStrategy strategy = OrderingStrategy::Trivial;
};

// Cells in row-major order; within a cell:
//   Trivial        neighborhood vars in registry order, then tiles ascending
//   UniformCell    uniformly shuffled neighborhood vars, then shuffled tiles
//   TileFrequency  tiles by Gumbel-sorted P[t]; neighborhood vars, if any,
//                  follow every cell in registry order
//   NeighborhoodFrequency
//                  neighborhood vars by Gumbel-sorted observed frequency, then
//                  tiles by Gumbel-sorted P[t]
// Reachable, IsDirt and variables unknown to the registry come last, ascending.
DecisionOrdering build_ordering(const Encoding& enc, const AdjacencyModel& model, OrderingStrategy strategy,
                                const GumbelRng& rng);

struct RenumberedProblem {
  CnfFormula formula;
  // 1-based; index 0 unused.
  std::vector<int> old_to_new;
  std::vector<int> new_to_old;

  // Maps a model over the renumbered variables back to original numbering.
  // Literals on variables beyond the original range are dropped.
  std::vector<Literal> to_original(std::span<const Literal> model) const;
};

// Variable order[k] becomes k + 1. Throws InvalidArgument unless `order` is a
// permutation of 1..formula.num_vars.
RenumberedProblem apply_ordering(const CnfFormula& formula, std::span<const int> order);
RenumberedProblem apply_ordering(const CnfFormula& formula, const DecisionOrdering& ordering);

// One original variable per line, in decision order.
std::string format_ordering(const DecisionOrdering& ordering);

}  // namespace yoro
