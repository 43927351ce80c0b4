#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "yoro/tilegrid.hpp"

namespace yoro {

// DIMACS literal: +v asserts variable v, -v negates it. Variables are 1-based.
using Literal = int;
using Clause = std::vector<Literal>;

inline int var_of(Literal lit) { return lit < 0 ? -lit : lit; }

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  // Throws InvalidArgument on an empty clause or a literal outside [1, num_vars].
  void add_clause(Clause clause);
  void add_clause(std::initializer_list<Literal> lits) { add_clause(Clause(lits)); }
  // Adds a fresh variable and returns its number.
  int new_var() { return ++num_vars; }
  // Checks the literal-range invariant over every clause; empty clauses are
  // reported too unless allow_empty is set.
  void validate(bool allow_empty = false) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// Semantic variables, tagged by kind.
struct TileAssign {
  std::size_t x = 0, y = 0;
  TileId tile = 0;
  friend auto operator<=>(const TileAssign&, const TileAssign&) = default;
};
struct NeighborhoodAssign {
  std::size_t x = 0, y = 0;
  Neighborhood nb;
  friend auto operator<=>(const NeighborhoodAssign&, const NeighborhoodAssign&) = default;
};
struct Reachable {
  std::size_t x = 0, y = 0;
  friend auto operator<=>(const Reachable&, const Reachable&) = default;
};
struct IsDirt {
  std::size_t x = 0, y = 0;
  friend auto operator<=>(const IsDirt&, const IsDirt&) = default;
};
struct Dummy {
  std::size_t index = 0;
  friend auto operator<=>(const Dummy&, const Dummy&) = default;
};

using SemanticVar = std::variant<TileAssign, NeighborhoodAssign, Reachable, IsDirt, Dummy>;

// Decision variables are the ones a generator orders; the rest are auxiliaries.
inline bool is_decision_var(const SemanticVar& v) {
  return std::holds_alternative<TileAssign>(v) || std::holds_alternative<NeighborhoodAssign>(v);
}

// Bijection between semantic variables and dense integers 1..size().
class VariableRegistry {
 public:
  // Returns the next unused integer. Throws InvalidArgument if already registered.
  int add(const SemanticVar& var);
  std::optional<int> find(const SemanticVar& var) const;
  // Throws InvalidArgument if unregistered.
  int id(const SemanticVar& var) const;
  const SemanticVar& at(int id) const;

  int size() const { return static_cast<int>(backward_.size()); }
  // backward()[i] is the semantic variable numbered i + 1.
  const std::vector<SemanticVar>& backward() const { return backward_; }

 private:
  std::map<SemanticVar, int> forward_;
  std::vector<SemanticVar> backward_;
};

// Reads the tile grid out of a full model. A model is a list of literals; a
// variable missing from it counts as false. Throws InconsistentModelError when
// a cell has zero or several true tile variables.
TileGrid decode_assignment(const VariableRegistry& registry, std::span<const Literal> model, std::size_t width,
                           std::size_t height, bool periodic = true);

}  // namespace yoro
