#include "xnf/formula.hpp"

#include <algorithm>
#include <string>

#include "xnf/errors.hpp"

namespace xnf {

std::size_t XnfFormula::max_clause_size() const {
  std::size_t m = 0;
  for (const auto& c : clauses) m = std::max(m, c.size());
  return m;
}

Var XnfFormula::max_var() const {
  Var m = 0;
  for (const auto& c : clauses) {
    for (const auto& l : c) m = std::max(m, l.max_var());
  }
  return m;
}

bool clause_satisfied(const XnfClause& clause, const Assignment& a) {
  return std::any_of(clause.begin(), clause.end(), [&](const Lineral& l) { return l.eval(a); });
}

bool verify_model(const XnfFormula& f, const Assignment& a) {
  if (a.size() != f.num_vars) {
    throw InputError("model has " + std::to_string(a.size()) + " entries, formula has " +
                     std::to_string(f.num_vars) + " variables");
  }
  return std::all_of(f.clauses.begin(), f.clauses.end(),
                     [&](const XnfClause& c) { return clause_satisfied(c, a); });
}

std::optional<XnfClause> normalize_clause(XnfClause clause) {
  XnfClause out;
  out.reserve(clause.size());
  for (auto& l : clause) {
    if (l.is_one()) return std::nullopt;
    if (l.is_zero()) continue;
    if (std::find(out.begin(), out.end(), l) != out.end()) continue;
    if (std::find(out.begin(), out.end(), l.plus_one()) != out.end()) return std::nullopt;
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace xnf
