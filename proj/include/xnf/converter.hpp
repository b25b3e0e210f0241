#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xnf/anf.hpp"
#include "xnf/formula.hpp"

namespace xnf {

/// y = l1 * l2, with y a fresh variable.
struct Substitution {
  Var y = 0;
  Lineral l1;
  Lineral l2;
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct Quadratization {
  std::size_t base_vars = 0;
  std::size_t fresh_vars = 0;
  std::vector<Substitution> substitutions;
};

/// Algebraic 2-XNF representation: every product a*b and every linear
/// polynomial is required to vanish.
struct Representation {
  std::size_t num_vars = 0;  // base + fresh
  std::vector<std::pair<Lineral, Lineral>> products;
  std::vector<Lineral> linears;
  Quadratization quad;

  /// Clause form: a*b = 0 becomes (a+1) ∨ (b+1), a linear l = 0 becomes the
  /// unit clause (l+1). Tautologies are dropped.
  XnfFormula to_formula() const;
};

/// Splits every clause with more than two linerals into 2-XNF. Fresh
/// variables start at f.num_vars + 1.
XnfFormula xnf_to_2xnf(const XnfFormula& f);

/// Term-by-term substitution of pairs of indeterminates. `num_vars` is the
/// base variable count (at least f.max_var()).
Representation anf_to_2xnf(const AnfPoly& f, std::size_t num_vars);

struct SubstitutionSearch {
  std::size_t budget = 1000;
  std::uint64_t seed = 0x5eed2c0ffee;
};

/// A factor pair (l1, l2) whose product's quadratic terms all occur in f,
/// together with the number of quadratic terms it removes.
struct Candidate {
  Lineral l1;
  Lineral l2;
  std::size_t cancelled = 0;
};

/// Best candidate from the per-variable factorizations f = x_i*l_i + g_i,
/// extended by pairwise combining (union of first factors, intersection of
/// second factors). Ties: fewer support variables, then smaller (l1, l2).
/// Requires a quadratic term in f.
Candidate find_substitution(const AnfPoly& f, const SubstitutionSearch& search = {});

/// Every candidate the search visited, best first.
std::vector<Candidate> substitution_candidates(const AnfPoly& f, const SubstitutionSearch& search = {});

/// Requires deg(f) <= 2 (InputError otherwise).
Representation qanf_to_2xnf(const AnfPoly& f, std::size_t num_vars, const SubstitutionSearch& search = {});

/// Converts each polynomial (quadratic path when deg <= 2) with one shared
/// pool of fresh variables. With `share_relations`, a basis of the linear
/// relations among the substituted products is appended as linear
/// polynomials in the fresh variables.
Representation system_to_2xnf(const std::vector<AnfPoly>& polys, std::size_t num_vars, bool share_relations,
                              const SubstitutionSearch& search = {});

/// Basis of the polynomials of degree <= 2 in x_1..x_k vanishing on every
/// point. Requires k <= 16 and every point of length k.
std::vector<AnfPoly> vanishing_quadrics(const std::vector<Assignment>& points, std::size_t k);

/// `y<i> = (l1) * (l2)` lines.
std::string write_substitution_map(const Quadratization& q);

}  // namespace xnf
