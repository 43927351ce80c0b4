#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yoro/cnf.hpp"
#include "yoro/solver.hpp"

namespace yoro {

// "p cnf <vars> <clauses>" then one 0-terminated clause per line. Each
// comment string becomes a leading "c <comment>" line.
std::string write_dimacs(const CnfFormula& formula, const std::vector<std::string>& comments = {});

// Accepts comment lines, clauses spanning several lines, and a trailing "%"
// section. Throws FormatError with the offending line number.
CnfFormula read_dimacs(std::string_view text);

struct UnsatAnswer {
  friend bool operator==(const UnsatAnswer&, const UnsatAnswer&) = default;
};
using SolverAnswer = std::variant<std::vector<Literal>, UnsatAnswer>;

// Parses competition-style output: "s SATISFIABLE" / "s UNSATISFIABLE" and
// any number of "v ..." lines, the last terminated by 0. Other lines ("c ...",
// blank) are ignored. Throws FormatError on malformed input.
SolverAnswer read_model(std::string_view solver_output);

struct ExternalSolverOptions {
  // Shell command; every "{cnf}" is replaced by the temporary DIMACS path.
  std::string command_template;
  std::optional<std::chrono::milliseconds> timeout;
};

// Writes the formula to a temporary file, runs the command through /bin/sh,
// parses its standard output and checks the model. Variables the solver
// leaves out of its model are set false, then the model is checked against
// the formula. Throws AdapterError when the process fails without a
// parseable status or returns a model that does not satisfy the formula;
// a timeout yields SolveStatus::LimitExceeded.
SolveReport run_external(const CnfFormula& formula, const ExternalSolverOptions& options);

}  // namespace yoro
