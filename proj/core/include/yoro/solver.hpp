#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "yoro/cnf.hpp"

namespace yoro {

enum class Phase { TrueFirst, FalseFirst };

enum class DecisionRule {
  // Lowest-numbered unassigned variable.
  AscendingIndex,
  // Static Jeroslow-Wang: highest max(activity(v), activity(-v)) first, ties
  // by ascending index; phase is True iff activity(v) > activity(-v), so the
  // configured Phase is ignored.
  StaticJeroslowWang,
};

std::string_view to_string(Phase p);
Phase parse_phase(std::string_view name);  // true-first | false-first

struct SolverLimits {
  std::optional<std::uint64_t> max_decisions;
  std::optional<std::uint64_t> max_conflicts;
};

struct SolverConfig {
  Phase phase = Phase::TrueFirst;
  DecisionRule decision_rule = DecisionRule::AscendingIndex;
  SolverLimits limits;
};

enum class SolveStatus { Sat, Unsat, LimitExceeded };

std::string_view to_string(SolveStatus s);

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::chrono::duration<double> elapsed{0};
};

struct SolveReport {
  SolveStatus status = SolveStatus::Unsat;
  // When Sat: one literal per variable 1..num_vars, in ascending variable order.
  std::vector<Literal> model;
  SolveStats stats;

  bool sat() const { return status == SolveStatus::Sat; }
};

enum class AssignKind {
  Decided,
  Propagated,
  // The opposite value of a refuted decision, assigned on backtrack.
  Flipped,
};

struct TraceEvent {
  int var = 0;
  bool value = false;
  AssignKind kind = AssignKind::Propagated;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// DPLL with unit propagation (two watched literals) and chronological
// backtracking: propagate; on conflict undo to the most recent decision not
// yet flipped and assign its negation; otherwise decide the next variable
// under the configured rule and phase. No learning, restarts or preprocessing,
// so the first model is a deterministic function of (formula, config).
//
// Throws std::logic_error if a model fails the internal satisfaction check.
SolveReport solve(const CnfFormula& formula, const SolverConfig& config = {});

// Same search as solve(); returns every assignment in chronological order,
// including ones later undone by backtracking.
std::vector<TraceEvent> decision_trace(const CnfFormula& formula, const SolverConfig& config = {},
                                       SolveReport* report = nullptr);

// Jeroslow-Wang literal activity: sum over clauses containing the literal of
// 2^-|clause|.
struct LiteralActivity {
  std::vector<double> positive;  // index v, 0 unused
  std::vector<double> negative;

  double operator()(Literal lit) const;
};

LiteralActivity jw_activity(const CnfFormula& formula);

}  // namespace yoro
