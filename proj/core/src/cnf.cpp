#include "yoro/cnf.hpp"

#include <sstream>

#include "yoro/error.hpp"

namespace yoro {

void CnfFormula::add_clause(Clause clause) {
  if (clause.empty()) throw InvalidArgument("cnf: empty clause");
  for (Literal lit : clause) {
    if (lit == 0 || var_of(lit) > num_vars) {
      std::ostringstream msg;
      msg << "cnf: literal " << lit << " outside [1, " << num_vars << "]";
      throw InvalidArgument(msg.str());
    }
  }
  clauses.push_back(std::move(clause));
}

void CnfFormula::validate(bool allow_empty) const {
  if (num_vars < 0) throw InvalidArgument("cnf: negative variable count");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty() && !allow_empty) throw InvalidArgument("cnf: empty clause");
    for (Literal lit : clauses[i]) {
      if (lit == 0 || var_of(lit) > num_vars) {
        std::ostringstream msg;
        msg << "cnf: clause " << i << " has literal " << lit << " outside [1, " << num_vars << "]";
        throw InvalidArgument(msg.str());
      }
    }
  }
}

int VariableRegistry::add(const SemanticVar& var) {
  int next = size() + 1;
  auto [it, inserted] = forward_.emplace(var, next);
  if (!inserted) throw InvalidArgument("registry: variable already registered");
  backward_.push_back(var);
  return next;
}

std::optional<int> VariableRegistry::find(const SemanticVar& var) const {
  auto it = forward_.find(var);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

int VariableRegistry::id(const SemanticVar& var) const {
  auto it = forward_.find(var);
  if (it == forward_.end()) throw InvalidArgument("registry: variable not registered");
  return it->second;
}

const SemanticVar& VariableRegistry::at(int id) const {
  if (id < 1 || id > size()) throw InvalidArgument("registry: variable id out of range");
  return backward_[static_cast<std::size_t>(id - 1)];
}

TileGrid decode_assignment(const VariableRegistry& registry, std::span<const Literal> model, std::size_t width,
                           std::size_t height, bool periodic) {
  std::vector<bool> truth(static_cast<std::size_t>(registry.size()) + 1, false);
  for (Literal lit : model) {
    int v = var_of(lit);
    if (lit > 0 && v <= registry.size()) truth[static_cast<std::size_t>(v)] = true;
  }

  constexpr TileId kUnset = ~TileId{0};
  std::vector<TileId> cells(width * height, kUnset);
  for (int v = 1; v <= registry.size(); ++v) {
    if (!truth[static_cast<std::size_t>(v)]) continue;
    const auto* ta = std::get_if<TileAssign>(&registry.at(v));
    if (!ta) continue;
    if (ta->x >= width || ta->y >= height) throw InvalidArgument("decode: tile variable outside grid");
    auto& cell = cells[ta->y * width + ta->x];
    if (cell != kUnset) {
      std::ostringstream msg;
      msg << "decode: cell (" << ta->x << ", " << ta->y << ") has more than one true tile variable";
      throw InconsistentModelError(msg.str());
    }
    cell = ta->tile;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == kUnset) {
      std::ostringstream msg;
      msg << "decode: cell (" << i % width << ", " << i / width << ") has no true tile variable";
      throw InconsistentModelError(msg.str());
    }
  }
  return TileGrid(width, height, std::move(cells), periodic);
}

}  // namespace yoro
