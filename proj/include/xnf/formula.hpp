#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xnf/lineral.hpp"

namespace xnf {

/// Disjunction of linerals. Each lineral is read logically: the clause holds
/// when at least one of them evaluates to 1. Algebraically the clause is the
/// product of the polynomials (lineral + 1).
using XnfClause = std::vector<Lineral>;

/// A conjunction of XNF clauses over variables 1..num_vars. An empty clause
/// is unsatisfiable.
struct XnfFormula {
  std::size_t num_vars = 0;
  std::vector<XnfClause> clauses;

  std::size_t max_clause_size() const;
  bool is_2xnf() const { return max_clause_size() <= 2; }
  /// Largest variable mentioned by any clause.
  Var max_var() const;

  friend bool operator==(const XnfFormula&, const XnfFormula&) = default;
};

bool clause_satisfied(const XnfClause& clause, const Assignment& a);

/// True iff every clause has a lineral evaluating to 1 under `a`.
/// Throws InputError when a.size() != f.num_vars.
bool verify_model(const XnfFormula& f, const Assignment& a);

/// Drops constant-false linerals. Returns nullopt when the clause contains a
/// constant-true lineral, i.e. is a tautology.
std::optional<XnfClause> normalize_clause(XnfClause clause);

}  // namespace xnf
