#pragma once

#include <cstddef>

#include "yoro/cnf.hpp"

namespace yoro {

// Flips the sign of every literal. A model m satisfies F iff -m satisfies
// negate_all(F), so a False-first solver on the result behaves like a
// True-first solver on F.
CnfFormula negate_all(const CnfFormula& formula);

struct PaddingResult {
  CnfFormula formula;
  // Variables above this number are padding dummies.
  int original_vars = 0;
  std::size_t clauses_added = 0;
};

// For every variable v with activity(v) > activity(-v), appends
// ceil((activity(v) - activity(-v)) / 0.25) clauses (d ∨ -v), each with a
// fresh dummy d, so that afterwards activity(v) <= activity(-v).
PaddingResult jw_pad(const CnfFormula& formula);

}  // namespace yoro
