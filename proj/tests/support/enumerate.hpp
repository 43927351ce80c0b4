#pragma once

#include <set>
#include <vector>

#include "yoro/cnf.hpp"
#include "yoro/solver.hpp"

namespace oracle {

// All models of f via repeated solving with blocking clauses, projected onto
// variables 1..project (all variables when project == 0).
inline std::set<std::vector<yoro::Literal>> solver_models(yoro::CnfFormula f, int project = 0,
                                                          std::size_t cap = 100000) {
  if (project == 0) project = f.num_vars;
  std::set<std::vector<yoro::Literal>> out;
  while (out.size() < cap) {
    auto r = yoro::solve(f);
    if (!r.sat()) break;
    std::vector<yoro::Literal> proj(r.model.begin(), r.model.begin() + project);
    out.insert(proj);
    yoro::Clause block;
    for (auto lit : proj) block.push_back(-lit);
    f.clauses.push_back(block);
  }
  return out;
}

}  // namespace oracle
