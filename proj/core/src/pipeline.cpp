#include "yoro/pipeline.hpp"

#include "yoro/analysis.hpp"
#include "yoro/transform.hpp"

namespace yoro {

PreparedProblem prepare(const AdjacencyModel& model, const GenerateOptions& options) {
  PreparedProblem p;
  p.encoding = encode(model, options.encode);
  p.ordering = build_ordering(p.encoding, model, options.strategy, GumbelRng(options.seed));
  p.renumbered = apply_ordering(p.encoding.formula, p.ordering);
  p.solver_formula = options.negate ? negate_all(p.renumbered.formula) : p.renumbered.formula;
  if (options.jw_pad) p.solver_formula = jw_pad(p.solver_formula).formula;
  return p;
}

std::vector<Literal> original_model(const PreparedProblem& problem, bool negated, std::span<const Literal> model) {
  std::vector<Literal> lits;
  lits.reserve(model.size());
  for (Literal lit : model) lits.push_back(negated ? -lit : lit);
  return problem.renumbered.to_original(lits);
}

GenerateResult generate(const AdjacencyModel& model, const GenerateOptions& options) {
  GenerateResult r;
  r.problem = prepare(model, options);
  r.report = options.external ? run_external(r.problem.solver_formula, *options.external)
                              : solve(r.problem.solver_formula, options.solver);
  if (!r.report.sat()) return r;

  const auto& enc = r.problem.encoding;
  const auto lits = original_model(r.problem, options.negate, r.report.model);
  r.grid = decode_assignment(enc.registry, lits, enc.width, enc.height, enc.periodic);
  r.adjacency_ok = verify_adjacency(*r.grid, model);
  if (options.encode.path) r.path_ok = verify_dirt_path(*r.grid, options.encode.path->path_tiles);
  return r;
}

}  // namespace yoro
