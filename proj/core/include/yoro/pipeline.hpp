#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "yoro/dimacs.hpp"
#include "yoro/encoder.hpp"
#include "yoro/ordering.hpp"
#include "yoro/solver.hpp"
#include "yoro/tilegrid.hpp"

namespace yoro {

struct GenerateOptions {
  EncodeOptions encode;
  OrderingStrategy strategy = OrderingStrategy::TileFrequency;
  std::uint64_t seed = 0;
  SolverConfig solver;
  bool negate = false;
  bool jw_pad = false;
  // Solve with an external DIMACS solver instead of the built-in one.
  std::optional<ExternalSolverOptions> external;
};

// Output of each pipeline stage.
struct PreparedProblem {
  Encoding encoding;
  DecisionOrdering ordering;
  RenumberedProblem renumbered;
  // What the solver sees: renumbered, then negated and/or padded.
  CnfFormula solver_formula;
};

struct GenerateResult {
  PreparedProblem problem;
  SolveReport report;
  // Present iff the report is Sat.
  std::optional<TileGrid> grid;
  bool adjacency_ok = false;
  bool path_ok = true;
};

// encode -> pre-roll ordering -> renumber -> optional negate / jw_pad.
PreparedProblem prepare(const AdjacencyModel& model, const GenerateOptions& options);

// Maps a solver model of problem.solver_formula back onto the encoding's
// numbering (undoing negation, dropping padding dummies).
std::vector<Literal> original_model(const PreparedProblem& problem, bool negated, std::span<const Literal> model);

// prepare, solve, decode and verify the decoded grid.
GenerateResult generate(const AdjacencyModel& model, const GenerateOptions& options);

}  // namespace yoro
