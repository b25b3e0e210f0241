#include "xnf/linsys.hpp"

#include <bit>
#include <limits>
#include <utility>

namespace xnf {

namespace {

constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();

// Leading coordinate when the constant is treated as the last coordinate:
// the smallest variable, else 0 for a nonzero constant, else none.
std::optional<Var> lead_coordinate(const Lineral& l) {
  if (const Var v = l.leading_var()) return v;
  if (l.constant()) return Var{0};
  return std::nullopt;
}

bool has_coordinate(const Lineral& l, Var c) { return c == 0 ? l.constant() : l.contains(c); }

}  // namespace

LinSystem::LinSystem(std::span<const Lineral> rows) {
  for (const Lineral& r : rows) insert(r);
}

Lineral LinSystem::reduce(const Lineral& f) const {
  Lineral r(f);
  const auto fw = f.words();
  const auto pw = pivot_mask_.words();
  const std::size_t nw = std::min(fw.size(), pw.size());
  // Rows carry no foreign pivots, so the pivots to clear are exactly those
  // present in f itself.
  for (std::size_t w = 0; w < nw; ++w) {
    Lineral::Word hit = fw[w] & pw[w];
    while (hit) {
      const Var v = static_cast<Var>(w * Lineral::kWordBits + std::countr_zero(hit) + 1);
      r += rows_[row_of_var_[v]];
      hit &= hit - 1;
    }
  }
  return r;
}

bool LinSystem::insert(const Lineral& f) {
  if (inconsistent_) return false;
  Lineral r = reduce(f);
  if (r.is_zero()) return false;
  if (r.is_one()) {
    inconsistent_ = true;
    return true;
  }
  const Var p = r.leading_var();
  for (Lineral& row : rows_) {
    if (row.contains(p)) row += r;
  }
  if (row_of_var_.size() <= p) row_of_var_.resize(p + 1, kNoRow);
  row_of_var_[p] = rows_.size();
  rows_.push_back(std::move(r));
  pivot_mask_.toggle(p);
  return true;
}

std::optional<Assignment> LinSystem::solve(std::size_t num_vars) const {
  if (inconsistent_) return std::nullopt;
  Assignment a(num_vars, false);
  for (const Lineral& row : rows_) {
    const Var p = row.leading_var();
    if (p <= num_vars) a[p - 1] = row.constant();
  }
  return a;
}

const Lineral* LinSystem::pivot_row(Var v) const noexcept {
  if (v >= row_of_var_.size() || row_of_var_[v] == kNoRow) return nullptr;
  return &rows_[row_of_var_[v]];
}

bool LinSystem::satisfied_by(const Assignment& a) const {
  if (inconsistent_) return false;
  for (const Lineral& row : rows_) {
    if (row.eval(a)) return false;
  }
  return true;
}

std::vector<Lineral> intersect_spans(std::span<const Lineral> a, std::span<const Lineral> b) {
  // Rows (left | right) start as (a | a) and (b | 0). After eliminating on the
  // left block, rows with a zero left block carry a basis of the intersection.
  struct Row {
    Lineral left, right;
  };
  std::vector<Row> rows;
  rows.reserve(a.size() + b.size());
  for (const Lineral& x : a) rows.push_back({x, x});
  for (const Lineral& x : b) rows.push_back({x, Lineral::zero()});

  std::vector<Row> echelon;
  std::vector<Lineral> common;
  LinSystem result;
  for (Row& row : rows) {
    for (const Row& e : echelon) {
      const Var c = *lead_coordinate(e.left);
      if (has_coordinate(row.left, c)) {
        row.left += e.left;
        row.right += e.right;
      }
    }
    if (!lead_coordinate(row.left)) {
      result.insert(row.right);
      common.push_back(row.right);
    } else {
      echelon.push_back(std::move(row));
    }
  }
  if (!result.consistent()) {
    // The intersection contains 1, so constants can be stripped from the
    // remaining generators and 1 appended as its own basis vector.
    LinSystem sys;
    for (Lineral x : common) {
      x.set_constant(false);
      sys.insert(x);
    }
    std::vector<Lineral> out(sys.rows().begin(), sys.rows().end());
    out.push_back(Lineral::one());
    return out;
  }
  return {result.rows().begin(), result.rows().end()};
}

bool meets_shifted(std::span<const Lineral> a, std::span<const Lineral> b) {
  LinSystem sys(a);
  for (const Lineral& x : b) {
    sys.insert(x);
    if (!sys.consistent()) return true;
  }
  return !sys.consistent();
}

AffineMeet affine_meet(std::span<const Lineral> a, std::span<const Lineral> b, bool shift_b) {
  if (shift_b) return {meets_shifted(a, b), {}};
  return {true, intersect_spans(a, b)};
}

}  // namespace xnf
