#include "yoro/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "yoro/error.hpp"

namespace yoro {

std::string_view to_string(Phase p) { return p == Phase::TrueFirst ? "true-first" : "false-first"; }

Phase parse_phase(std::string_view name) {
  if (name == "true-first") return Phase::TrueFirst;
  if (name == "false-first") return Phase::FalseFirst;
  throw InvalidArgument("unknown phase: " + std::string(name));
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "SAT";
    case SolveStatus::Unsat: return "UNSAT";
    case SolveStatus::LimitExceeded: return "LIMIT";
  }
  return "?";
}

double LiteralActivity::operator()(Literal lit) const {
  const auto v = static_cast<std::size_t>(var_of(lit));
  const auto& side = lit > 0 ? positive : negative;
  return v < side.size() ? side[v] : 0.0;
}

LiteralActivity jw_activity(const CnfFormula& formula) {
  LiteralActivity act;
  const auto n = static_cast<std::size_t>(formula.num_vars) + 1;
  act.positive.assign(n, 0.0);
  act.negative.assign(n, 0.0);
  for (const auto& clause : formula.clauses) {
    const double w = std::ldexp(1.0, -static_cast<int>(clause.size()));
    for (Literal lit : clause) {
      auto v = static_cast<std::size_t>(var_of(lit));
      (lit > 0 ? act.positive : act.negative)[v] += w;
    }
  }
  return act;
}

namespace {

class Dpll {
 public:
  Dpll(const CnfFormula& formula, const SolverConfig& config, std::vector<TraceEvent>* trace)
      : formula_(formula), config_(config), trace_(trace), n_(formula.num_vars) {}

  SolveReport run() {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    report.status = search();
    report.stats = stats_;
    if (report.status == SolveStatus::Sat) {
      report.model.reserve(static_cast<std::size_t>(n_));
      for (int v = 1; v <= n_; ++v) report.model.push_back(value_[static_cast<std::size_t>(v)] > 0 ? v : -v);
      check_model(report.model);
    }
    report.stats.elapsed = std::chrono::steady_clock::now() - start;
    return report;
  }

 private:
  struct Level {
    std::size_t trail_pos;
    bool flipped;
  };

  static std::size_t lit_index(Literal lit) {
    return 2 * static_cast<std::size_t>(var_of(lit)) + (lit < 0 ? 1 : 0);
  }

  signed char lit_value(Literal lit) const {
    signed char v = value_[static_cast<std::size_t>(var_of(lit))];
    return lit > 0 ? v : static_cast<signed char>(-v);
  }

  // Returns false if the formula is trivially UNSAT (an empty clause, or
  // contradicting unit clauses).
  bool load() {
    value_.assign(static_cast<std::size_t>(n_) + 1, 0);
    watches_.assign(2 * (static_cast<std::size_t>(n_) + 1), {});
    bool ok = true;
    std::vector<Literal> units;
    Clause c;
    for (const auto& original : formula_.clauses) {
      if (original.empty()) return false;
      c = original;
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool tautology = false;
      for (std::size_t i = 0; i + 1 < c.size() && !tautology; ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
          if (c[i] == -c[j]) {
            tautology = true;
            break;
          }
      if (tautology) continue;
      if (c.size() == 1) {
        units.push_back(c[0]);
        continue;
      }
      const auto idx = static_cast<std::uint32_t>(clause_start_.size());
      clause_start_.push_back(static_cast<std::uint32_t>(lits_.size()));
      clause_size_.push_back(static_cast<std::uint32_t>(c.size()));
      lits_.insert(lits_.end(), c.begin(), c.end());
      watches_[lit_index(c[0])].push_back(idx);
      watches_[lit_index(c[1])].push_back(idx);
    }
    for (Literal u : units) {
      signed char v = lit_value(u);
      if (v < 0) ok = false;
      if (v == 0) assign(u, AssignKind::Propagated);
    }
    return ok;
  }

  void build_decision_order() {
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 1);
    jw_phase_.assign(static_cast<std::size_t>(n_) + 1, false);
    if (config_.decision_rule == DecisionRule::StaticJeroslowWang) {
      const auto act = jw_activity(formula_);
      std::vector<double> score(static_cast<std::size_t>(n_) + 1, 0.0);
      for (int v = 1; v <= n_; ++v) {
        auto i = static_cast<std::size_t>(v);
        score[i] = std::max(act.positive[i], act.negative[i]);
        jw_phase_[i] = act.positive[i] > act.negative[i];
      }
      std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
        return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
      });
    }
    rank_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t k = 0; k < order_.size(); ++k) rank_[static_cast<std::size_t>(order_[k])] = k;
  }

  void assign(Literal lit, AssignKind kind) {
    value_[static_cast<std::size_t>(var_of(lit))] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
    if (kind == AssignKind::Propagated) ++stats_.propagations;
    if (trace_) trace_->push_back({var_of(lit), lit > 0, kind});
  }

  void undo_to(std::size_t trail_pos) {
    while (trail_.size() > trail_pos) {
      const int v = var_of(trail_.back());
      trail_.pop_back();
      value_[static_cast<std::size_t>(v)] = 0;
      next_ = std::min(next_, rank_[static_cast<std::size_t>(v)]);
    }
    qhead_ = std::min(qhead_, trail_.size());
  }

  // Returns true on conflict.
  bool propagate() {
    while (qhead_ < trail_.size()) {
      const Literal falsified = -trail_[qhead_++];
      auto& ws = watches_[lit_index(falsified)];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::uint32_t ci = ws[i];
        if (conflict) {
          ws[keep++] = ci;
          continue;
        }
        Literal* c = lits_.data() + clause_start_[ci];
        const std::uint32_t size = clause_size_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        // c[1] is the falsified watch now.
        if (lit_value(c[0]) > 0) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::uint32_t k = 2; k < size; ++k) {
          if (lit_value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[lit_index(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (lit_value(c[0]) < 0) {
          conflict = true;
        } else {
          assign(c[0], AssignKind::Propagated);
        }
      }
      ws.resize(keep);
      if (conflict) return true;
    }
    return false;
  }

  SolveStatus search() {
    build_decision_order();
    if (!load()) return SolveStatus::Unsat;

    const auto& limits = config_.limits;
    for (;;) {
      if (propagate()) {
        ++stats_.conflicts;
        if (limits.max_conflicts && stats_.conflicts > *limits.max_conflicts) return SolveStatus::LimitExceeded;
        while (!levels_.empty() && levels_.back().flipped) {
          undo_to(levels_.back().trail_pos);
          levels_.pop_back();
        }
        if (levels_.empty()) return SolveStatus::Unsat;
        Level& top = levels_.back();
        const Literal refuted = trail_[top.trail_pos];
        undo_to(top.trail_pos);
        top.flipped = true;
        assign(-refuted, AssignKind::Flipped);
        continue;
      }

      while (next_ < order_.size() && value_[static_cast<std::size_t>(order_[next_])] != 0) ++next_;
      if (next_ == order_.size()) return SolveStatus::Sat;

      if (limits.max_decisions && stats_.decisions >= *limits.max_decisions) return SolveStatus::LimitExceeded;
      ++stats_.decisions;
      const int v = order_[next_];
      bool positive = config_.decision_rule == DecisionRule::StaticJeroslowWang
                          ? jw_phase_[static_cast<std::size_t>(v)]
                          : config_.phase == Phase::TrueFirst;
      levels_.push_back({trail_.size(), false});
      assign(positive ? v : -v, AssignKind::Decided);
    }
  }

  void check_model(const std::vector<Literal>& model) const {
    for (const auto& clause : formula_.clauses) {
      bool sat = false;
      for (Literal lit : clause) {
        if (model[static_cast<std::size_t>(var_of(lit)) - 1] == lit) {
          sat = true;
          break;
        }
      }
      if (!sat) throw std::logic_error("solver: model violates a clause");
    }
  }

  const CnfFormula& formula_;
  const SolverConfig& config_;
  std::vector<TraceEvent>* trace_;
  int n_;

  std::vector<Literal> lits_;
  std::vector<std::uint32_t> clause_start_;
  std::vector<std::uint32_t> clause_size_;
  std::vector<std::vector<std::uint32_t>> watches_;

  std::vector<signed char> value_;
  std::vector<Literal> trail_;
  std::vector<Level> levels_;
  std::size_t qhead_ = 0;

  std::vector<int> order_;
  std::vector<std::size_t> rank_;
  std::vector<bool> jw_phase_;
  std::size_t next_ = 0;

  SolveStats stats_;
};

}  // namespace

SolveReport solve(const CnfFormula& formula, const SolverConfig& config) {
  formula.validate(/*allow_empty=*/true);
  return Dpll(formula, config, nullptr).run();
}

std::vector<TraceEvent> decision_trace(const CnfFormula& formula, const SolverConfig& config, SolveReport* report) {
  formula.validate(/*allow_empty=*/true);
  std::vector<TraceEvent> trace;
  SolveReport r = Dpll(formula, config, &trace).run();
  if (report) *report = std::move(r);
  return trace;
}

}  // namespace yoro
