#include "yoro/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "yoro/error.hpp"

namespace yoro {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

GumbelRng::GumbelRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

GumbelRng GumbelRng::substream(std::uint64_t index) const {
  return GumbelRng(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double GumbelRng::uniform() {
  // 53 random mantissa bits.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::clamp(u, kEpsilon, 1.0 - kEpsilon);
}

double GumbelRng::gumbel() { return -std::log(-std::log(uniform())); }

double gumbel_score(double weight, GumbelRng& rng) {
  if (!(weight > 0.0)) throw InvalidArgument("gumbel_score: weight must be positive");
  return std::log(weight) + rng.gumbel();
}

std::vector<std::size_t> sample_cell_suborder(std::span<const double> weights, GumbelRng& rng) {
  if (weights.empty()) throw InvalidArgument("sample_cell_suborder: no options");
  std::vector<double> scores;
  scores.reserve(weights.size());
  for (double w : weights) scores.push_back(gumbel_score(w, rng));
  std::vector<std::size_t> perm(weights.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return perm;
}

std::string_view to_string(OrderingStrategy s) {
  switch (s) {
    case OrderingStrategy::Trivial: return "trivial";
    case OrderingStrategy::UniformCell: return "uniform";
    case OrderingStrategy::TileFrequency: return "tile-freq";
    case OrderingStrategy::NeighborhoodFrequency: return "nbhd-freq";
  }
  return "?";
}

OrderingStrategy parse_ordering_strategy(std::string_view name) {
  if (name == "trivial") return OrderingStrategy::Trivial;
  if (name == "uniform") return OrderingStrategy::UniformCell;
  if (name == "tile-freq") return OrderingStrategy::TileFrequency;
  if (name == "nbhd-freq") return OrderingStrategy::NeighborhoodFrequency;
  throw InvalidArgument("unknown ordering strategy: " + std::string(name));
}

DecisionOrdering build_ordering(const Encoding& enc, const AdjacencyModel& model, OrderingStrategy strategy,
                                const GumbelRng& rng) {
  const std::size_t num_cells = enc.width * enc.height;
  const std::size_t nt = enc.num_tiles;

  struct NbhdVar {
    int id;
    double weight;
  };
  std::vector<std::vector<NbhdVar>> cell_nbhd(num_cells);
  std::vector<int> auxiliaries;
  bool has_nbhd = false;
  for (int v = 1; v <= enc.registry.size(); ++v) {
    const auto& sv = enc.registry.at(v);
    if (const auto* na = std::get_if<NeighborhoodAssign>(&sv)) {
      auto it = model.neighborhood_counts.find(na->nb);
      double w = it == model.neighborhood_counts.end() ? 0.0 : static_cast<double>(it->second);
      cell_nbhd[na->y * enc.width + na->x].push_back({v, w});
      has_nbhd = true;
    } else if (!is_decision_var(sv)) {
      auxiliaries.push_back(v);
    }
  }

  std::vector<double> tile_weights;
  if (strategy == OrderingStrategy::TileFrequency || strategy == OrderingStrategy::NeighborhoodFrequency) {
    if (model.tile_counts.size() != nt) throw InvalidArgument("build_ordering: tile counts do not match encoding");
    tile_weights = tile_distribution(model).probs;
    for (TileId t = 0; t < nt; ++t) {
      if (!(tile_weights[t] > 0.0)) {
        std::ostringstream msg;
        msg << "build_ordering: tile " << t << " has zero frequency; frequency ordering needs P[t] > 0";
        throw InvalidArgument(msg.str());
      }
    }
  }
  if (strategy == OrderingStrategy::NeighborhoodFrequency) {
    if (!has_nbhd)
      throw InvalidArgument("build_ordering: nbhd-freq ordering requires a neighborhood-level encoding");
    for (const auto& cell : cell_nbhd)
      for (const auto& nv : cell)
        if (!(nv.weight > 0.0)) throw InvalidArgument("build_ordering: neighborhood variable with zero frequency");
  }

  DecisionOrdering out;
  out.strategy = strategy;
  out.order.reserve(static_cast<std::size_t>(enc.formula.num_vars));
  std::vector<double> weights;
  std::vector<int> deferred;

  for (std::size_t cell = 0; cell < num_cells; ++cell) {
    const std::size_t x = cell % enc.width, y = cell / enc.width;
    GumbelRng stream = rng.substream(cell);
    const auto& nbhd = cell_nbhd[cell];

    switch (strategy) {
      case OrderingStrategy::Trivial:
        for (const auto& nv : nbhd) out.order.push_back(nv.id);
        for (TileId t = 0; t < nt; ++t) out.order.push_back(enc.tile_var(x, y, t));
        break;

      case OrderingStrategy::UniformCell: {
        if (!nbhd.empty()) {
          weights.assign(nbhd.size(), 1.0);
          for (auto k : sample_cell_suborder(weights, stream)) out.order.push_back(nbhd[k].id);
        }
        weights.assign(nt, 1.0);
        for (auto k : sample_cell_suborder(weights, stream))
          out.order.push_back(enc.tile_var(x, y, static_cast<TileId>(k)));
        break;
      }

      case OrderingStrategy::TileFrequency:
        for (const auto& nv : nbhd) deferred.push_back(nv.id);
        for (auto k : sample_cell_suborder(tile_weights, stream))
          out.order.push_back(enc.tile_var(x, y, static_cast<TileId>(k)));
        break;

      case OrderingStrategy::NeighborhoodFrequency: {
        if (!nbhd.empty()) {
          weights.clear();
          for (const auto& nv : nbhd) weights.push_back(nv.weight);
          for (auto k : sample_cell_suborder(weights, stream)) out.order.push_back(nbhd[k].id);
        }
        for (auto k : sample_cell_suborder(tile_weights, stream))
          out.order.push_back(enc.tile_var(x, y, static_cast<TileId>(k)));
        break;
      }
    }
  }
  out.order.insert(out.order.end(), deferred.begin(), deferred.end());
  out.num_decision_vars = out.order.size();
  out.order.insert(out.order.end(), auxiliaries.begin(), auxiliaries.end());
  for (int v = enc.registry.size() + 1; v <= enc.formula.num_vars; ++v) out.order.push_back(v);
  return out;
}

std::vector<Literal> RenumberedProblem::to_original(std::span<const Literal> model) const {
  const int n = static_cast<int>(new_to_old.size()) - 1;
  std::vector<Literal> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (Literal lit : model) {
    int v = var_of(lit);
    if (v > n) continue;
    int old = new_to_old[static_cast<std::size_t>(v)];
    out.push_back(lit > 0 ? old : -old);
  }
  std::sort(out.begin(), out.end(), [](Literal a, Literal b) { return var_of(a) < var_of(b); });
  return out;
}

RenumberedProblem apply_ordering(const CnfFormula& formula, std::span<const int> order) {
  const int n = formula.num_vars;
  if (static_cast<int>(order.size()) != n) {
    std::ostringstream msg;
    msg << "apply_ordering: ordering has " << order.size() << " entries for " << n << " variables";
    throw InvalidArgument(msg.str());
  }
  RenumberedProblem out;
  out.old_to_new.assign(static_cast<std::size_t>(n) + 1, 0);
  out.new_to_old.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < n; ++k) {
    int old = order[static_cast<std::size_t>(k)];
    if (old < 1 || old > n || out.old_to_new[static_cast<std::size_t>(old)] != 0)
      throw InvalidArgument("apply_ordering: ordering is not a permutation of the variables");
    out.old_to_new[static_cast<std::size_t>(old)] = k + 1;
    out.new_to_old[static_cast<std::size_t>(k) + 1] = old;
  }
  out.formula.num_vars = n;
  out.formula.clauses.reserve(formula.clauses.size());
  for (const auto& clause : formula.clauses) {
    Clause c;
    c.reserve(clause.size());
    for (Literal lit : clause) {
      if (lit == 0 || var_of(lit) > n) throw InvalidArgument("apply_ordering: literal outside the formula's range");
      int nv = out.old_to_new[static_cast<std::size_t>(var_of(lit))];
      c.push_back(lit > 0 ? nv : -nv);
    }
    out.formula.clauses.push_back(std::move(c));
  }
  return out;
}

RenumberedProblem apply_ordering(const CnfFormula& formula, const DecisionOrdering& ordering) {
  return apply_ordering(formula, std::span<const int>(ordering.order));
}

std::string format_ordering(const DecisionOrdering& ordering) {
  std::string out;
  for (int v : ordering.order) {
    out += std::to_string(v);
    out.push_back('\n');
  }
  return out;
}

}  // namespace yoro
