#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xnf/lineral.hpp"

namespace xnf {

/// A fully interreduced system of linear Boolean polynomials.
///
/// Every row has a distinct pivot (its leading variable) and no pivot occurs
/// in any other row. Learning 1 (or anything reducing to it) puts the system
/// into the inconsistent state, whose span is all of L_n.
class LinSystem {
 public:
  LinSystem() = default;
  explicit LinSystem(std::span<const Lineral> rows);

  /// Normal remainder of f: no pivot of the system survives in the result.
  Lineral reduce(const Lineral& f) const;

  /// Adds f to the span. Returns true iff the span grew.
  bool insert(const Lineral& f);

  bool contains(const Lineral& f) const { return inconsistent_ || reduce(f).is_zero(); }
  bool consistent() const noexcept { return !inconsistent_; }

  /// One point of the zero set: free variables are 0, so each pivot takes the
  /// row's constant. nullopt when inconsistent.
  std::optional<Assignment> solve(std::size_t num_vars) const;

  /// Dimension of the span; n+1 counts as "everything" once inconsistent.
  std::size_t dim() const noexcept { return rows_.size() + (inconsistent_ ? 1 : 0); }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty() && !inconsistent_; }

  std::span<const Lineral> rows() const noexcept { return rows_; }
  /// Row whose leading variable is v, or nullptr.
  const Lineral* pivot_row(Var v) const noexcept;
  /// Bit-vector of all pivot variables.
  const Lineral& pivots() const noexcept { return pivot_mask_; }

  /// Zero-set membership of every row.
  bool satisfied_by(const Assignment& a) const;

 private:
  std::vector<Lineral> rows_;
  std::vector<std::size_t> row_of_var_;  // index by Var, npos when not a pivot
  Lineral pivot_mask_;
  bool inconsistent_ = false;
};

/// Result of intersecting span(A) with span(B) or with 1 + span(B).
struct AffineMeet {
  bool nonempty = false;
  /// Basis of span(A) ∩ span(B); empty for the shifted case.
  std::vector<Lineral> basis;
};

/// Intersects the spans of two generating sets. With `shift_b`, B is replaced
/// by the affine space 1 + span(B), and only emptiness is reported.
AffineMeet affine_meet(std::span<const Lineral> a, std::span<const Lineral> b, bool shift_b = false);

/// Basis of span(a) ∩ span(b) (Zassenhaus elimination, constant as a coordinate).
std::vector<Lineral> intersect_spans(std::span<const Lineral> a, std::span<const Lineral> b);

/// True iff span(a) ∩ (1 + span(b)) is nonempty, i.e. 1 ∈ span(a ∪ b).
bool meets_shifted(std::span<const Lineral> a, std::span<const Lineral> b);

}  // namespace xnf
