#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "xnf/lineral.hpp"

namespace xnf {

/// Square-free term as an ascending variable list; the empty list is 1.
using Monomial = std::vector<Var>;

/// Degree-descending, then lexicographic. This is also the order in which
/// the converters visit terms.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  }
};

/// Boolean polynomial in algebraic normal form.
class AnfPoly {
 public:
  using Terms = std::set<Monomial, MonomialOrder>;

  AnfPoly() = default;
  explicit AnfPoly(std::vector<Monomial> terms);

  static AnfPoly from_lineral(const Lineral& l);
  /// ANF of the product a*b, using x_i^2 = x_i.
  static AnfPoly product(const Lineral& a, const Lineral& b);

  /// Adds (XORs) a term; the term is sorted and deduplicated first.
  void toggle(Monomial m);
  AnfPoly& operator+=(const AnfPoly& o);
  friend AnfPoly operator+(AnfPoly a, const AnfPoly& b) {
    a += b;
    return a;
  }

  friend AnfPoly operator*(const AnfPoly& a, const AnfPoly& b);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->size());
  }
  Var max_var() const;
  bool contains(const Monomial& m) const { return terms_.count(m) != 0; }

  bool eval(const Assignment& a) const;
  /// Requires degree <= 1.
  Lineral to_lineral() const;

  /// e.g. "x1*x2+x3+1"; the zero polynomial prints as "0".
  std::string to_string() const;

  friend bool operator==(const AnfPoly&, const AnfPoly&) = default;

 private:
  Terms terms_;
};

}  // namespace xnf
