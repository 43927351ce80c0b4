#include "yoro/transform.hpp"

#include <cmath>

#include "yoro/solver.hpp"

namespace yoro {

CnfFormula negate_all(const CnfFormula& formula) {
  CnfFormula out;
  out.num_vars = formula.num_vars;
  out.clauses.reserve(formula.clauses.size());
  for (const auto& clause : formula.clauses) {
    Clause c;
    c.reserve(clause.size());
    for (Literal lit : clause) c.push_back(-lit);
    out.clauses.push_back(std::move(c));
  }
  return out;
}

PaddingResult jw_pad(const CnfFormula& formula) {
  const auto act = jw_activity(formula);
  PaddingResult out;
  out.formula = formula;
  out.original_vars = formula.num_vars;
  for (int v = 1; v <= formula.num_vars; ++v) {
    const double diff = act(v) - act(-v);
    if (!(diff > 0.0)) continue;
    // Activities are sums of powers of two, so diff / 0.25 is exact.
    const auto count = static_cast<std::size_t>(std::ceil(diff / 0.25));
    for (std::size_t i = 0; i < count; ++i) {
      const int dummy = out.formula.new_var();
      out.formula.clauses.push_back({dummy, -v});
    }
    out.clauses_added += count;
  }
  return out;
}

}  // namespace yoro
