#include "xnf/converter.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "xnf/errors.hpp"

namespace xnf {
namespace {

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
void flip_bit(Bits& b, std::size_t i) { b[i / 64] ^= std::uint64_t{1} << (i % 64); }

// Index sets S with sum_{i in S} vectors[i] = 0, forming a basis of all such
// relations. Each relation contains exactly one index that is larger than all
// indices of the independent vectors before it.
std::vector<std::vector<std::size_t>> linear_dependencies(const std::vector<Bits>& vectors, std::size_t width) {
  struct Row {
    Bits v;
    Bits combo;
  };
  const std::size_t n = vectors.size();
  const std::size_t cw = (n + 63) / 64;
  std::vector<Row> rows;
  std::vector<std::size_t> pivot_row(width, SIZE_MAX);
  std::vector<std::vector<std::size_t>> deps;

  for (std::size_t i = 0; i < n; ++i) {
    Row r{vectors[i], Bits(cw, 0)};
    r.v.resize((width + 63) / 64, 0);
    flip_bit(r.combo, i);
    std::size_t free_bit = SIZE_MAX;
    for (std::size_t w = 0; w < r.v.size() && free_bit == SIZE_MAX; ++w) {
      while (r.v[w]) {
        const std::size_t b = w * 64 + std::countr_zero(r.v[w]);
        if (pivot_row[b] == SIZE_MAX) {
          free_bit = b;
          break;
        }
        const Row& p = rows[pivot_row[b]];
        for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] ^= p.v[k];
        for (std::size_t k = 0; k < cw; ++k) r.combo[k] ^= p.combo[k];
      }
    }
    if (free_bit == SIZE_MAX) {
      std::vector<std::size_t> dep;
      for (std::size_t k = 0; k < n; ++k) {
        if (test_bit(r.combo, k)) dep.push_back(k);
      }
      deps.push_back(std::move(dep));
    } else {
      pivot_row[free_bit] = rows.size();
      rows.push_back(std::move(r));
    }
  }
  return deps;
}

struct Builder {
  Representation rep;
  Var next = 0;

  explicit Builder(std::size_t num_vars) : next(static_cast<Var>(num_vars)) {
    rep.quad.base_vars = num_vars;
  }

  // y = l1*l2, represented by y(l2+1) and l2(l1+y).
  Lineral substitute(const Lineral& l1, const Lineral& l2) {
    const Var y = ++next;
    const Lineral ly = Lineral::variable(y);
    rep.products.emplace_back(ly, l2.plus_one());
    rep.products.emplace_back(l2, l1 + ly);
    rep.quad.substitutions.push_back({y, l1, l2});
    return ly;
  }

  void add_linear(Lineral l) {
    if (!l.is_zero()) rep.linears.push_back(std::move(l));
  }

  Representation finish() {
    rep.num_vars = next;
    rep.quad.fresh_vars = next - rep.quad.base_vars;
    return std::move(rep);
  }
};

void check_vars(const AnfPoly& f, std::size_t num_vars) {
  if (f.max_var() > num_vars) {
    throw InputError("polynomial mentions x" + std::to_string(f.max_var()) + " beyond " +
                     std::to_string(num_vars) + " variables");
  }
}

void anf_into(const AnfPoly& f, Builder& b) {
  Lineral linear;
  std::vector<Monomial> higher;
  for (const auto& t : f.terms()) {
    if (t.size() <= 1) {
      linear += t.empty() ? Lineral::one() : Lineral::variable(t.front());
    } else {
      higher.push_back(t);
    }
  }
  for (std::size_t k = 0; k < higher.size(); ++k) {
    Monomial t = higher[k];
    const bool last = k + 1 == higher.size();
    while (t.size() > 1) {
      // A lone quadratic term is already a product of two linerals.
      if (last && t.size() == 2 && linear.is_zero()) {
        b.rep.products.emplace_back(Lineral::variable(t[0]), Lineral::variable(t[1]));
        return;
      }
      const Lineral y = b.substitute(Lineral::variable(t[0]), Lineral::variable(t[1]));
      t.erase(t.begin(), t.begin() + 2);
      t.insert(std::upper_bound(t.begin(), t.end(), y.leading_var()), y.leading_var());
    }
    linear += Lineral::variable(t.front());
  }
  b.add_linear(std::move(linear));
}

// Quadratic support as an adjacency structure, plus the linear terms.
struct QuadView {
  std::map<Var, std::set<Var>> nbr;
  std::set<Var> linear;
  std::size_t quad_terms = 0;

  explicit QuadView(const AnfPoly& f) {
    for (const auto& t : f.terms()) {
      if (t.size() == 2) {
        nbr[t[0]].insert(t[1]);
        nbr[t[1]].insert(t[0]);
        ++quad_terms;
      } else if (t.size() == 1) {
        linear.insert(t[0]);
      }
    }
  }
};

Lineral lineral_union(const Lineral& a, const Lineral& b) {
  std::vector<Var> va = a.vars(), vb = b.vars(), u;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(u));
  return Lineral::from_vars(u, a.constant() || b.constant());
}

Lineral lineral_intersection(const Lineral& a, const Lineral& b) {
  std::vector<Var> va = a.vars(), vb = b.vars(), u;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(u));
  return Lineral::from_vars(u, a.constant() && b.constant());
}

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.cancelled != b.cancelled) return a.cancelled > b.cancelled;
  const std::size_t sa = a.l1.size() + a.l2.size(), sb = b.l1.size() + b.l2.size();
  if (sa != sb) return sa < sb;
  return std::tie(a.l1, a.l2) < std::tie(b.l1, b.l2);
}

std::size_t quad_var_count(const AnfPoly& f) {
  std::set<Var> vs;
  for (const auto& t : f.terms()) {
    if (t.size() == 2) vs.insert(t.begin(), t.end());
  }
  return vs.size();
}

}  // namespace

XnfFormula Representation::to_formula() const {
  XnfFormula out;
  out.num_vars = num_vars;
  for (const auto& [a, b] : products) {
    if (auto c = normalize_clause({a.plus_one(), b.plus_one()})) out.clauses.push_back(std::move(*c));
  }
  for (const auto& l : linears) {
    if (auto c = normalize_clause({l.plus_one()})) out.clauses.push_back(std::move(*c));
  }
  return out;
}

XnfFormula xnf_to_2xnf(const XnfFormula& f) {
  XnfFormula out;
  Var next = static_cast<Var>(f.num_vars);
  for (const auto& clause : f.clauses) {
    XnfClause cur = clause;
    while (cur.size() > 2) {
      const Lineral y = Lineral::variable(++next);
      out.clauses.push_back({y, cur[1].plus_one()});
      out.clauses.push_back({(y + cur[0]).plus_one(), cur[1]});
      cur.erase(cur.begin(), cur.begin() + 2);
      cur.insert(cur.begin(), y);
    }
    out.clauses.push_back(std::move(cur));
  }
  out.num_vars = next;
  return out;
}

Representation anf_to_2xnf(const AnfPoly& f, std::size_t num_vars) {
  check_vars(f, num_vars);
  Builder b(num_vars);
  anf_into(f, b);
  return b.finish();
}

std::vector<Candidate> substitution_candidates(const AnfPoly& f, const SubstitutionSearch& search) {
  const QuadView q(f);
  if (q.quad_terms == 0) throw InputError("polynomial has no quadratic term");

  std::vector<Candidate> pool;
  std::set<std::pair<Lineral, Lineral>> seen;
  auto add = [&](Lineral l1, Lineral l2) {
    if (l1.is_constant() || l2.is_constant()) return;
    // Combining can produce overlapping factors; keep only pairs whose every
    // cross term is a distinct quadratic term of f.
    bool valid = true;
    l1.for_each_var([&](Var a) {
      const auto it = q.nbr.find(a);
      l2.for_each_var([&](Var b) { valid = valid && it != q.nbr.end() && it->second.count(b); });
    });
    if (!valid) return;
    if (!seen.emplace(l1, l2).second) return;
    const std::size_t score = l1.size() * l2.size();
    pool.push_back({std::move(l1), std::move(l2), score});
  };

  for (const auto& [v, ns] : q.nbr) {
    add(Lineral::variable(v), Lineral::from_vars(std::vector<Var>(ns.begin(), ns.end()), q.linear.count(v) != 0));
  }
  const std::size_t seeds = pool.size();
  constexpr std::size_t kExhaustiveSeeds = 64;
  if (seeds <= kExhaustiveSeeds) {
    for (std::size_t i = 0; i < seeds; ++i) {
      for (std::size_t j = i + 1; j < seeds; ++j) {
        add(lineral_union(pool[i].l1, pool[j].l1), lineral_intersection(pool[i].l2, pool[j].l2));
      }
    }
  }

  std::mt19937_64 rng(search.seed);
  for (std::size_t it = 0; it < search.budget && pool.size() > 1; ++it) {
    const std::size_t i = rng() % pool.size();
    const std::size_t j = rng() % pool.size();
    if (i == j) continue;
    const std::uint64_t flips = rng();
    const Candidate& a = pool[i];
    const Candidate& c = pool[j];
    const Lineral& a1 = flips & 1 ? a.l2 : a.l1;
    const Lineral& a2 = flips & 1 ? a.l1 : a.l2;
    const Lineral& c1 = flips & 2 ? c.l2 : c.l1;
    const Lineral& c2 = flips & 2 ? c.l1 : c.l2;
    Lineral m1 = lineral_union(a1, c1);
    Lineral m2 = lineral_intersection(a2, c2);
    add(std::move(m1), std::move(m2));
  }

  std::sort(pool.begin(), pool.end(), candidate_before);
  return pool;
}

Candidate find_substitution(const AnfPoly& f, const SubstitutionSearch& search) {
  return substitution_candidates(f, search).front();
}

Representation qanf_to_2xnf(const AnfPoly& f, std::size_t num_vars, const SubstitutionSearch& search) {
  if (f.degree() > 2) throw InputError("qanf_to_2xnf needs degree <= 2, got " + std::to_string(f.degree()));
  check_vars(f, num_vars);
  Builder b(num_vars);
  AnfPoly g = f;
  while (g.degree() == 2) {
    const auto pool = substitution_candidates(g, search);
    // The top candidate normally removes every term of some variable; if it
    // does not, fall back to the best one that does, which keeps the count
    // of substitutions below the number of variables.
    const std::size_t k = quad_var_count(g);
    const Candidate* pick = nullptr;
    for (const auto& c : pool) {
      if (quad_var_count(g + AnfPoly::product(c.l1, c.l2)) < k) {
        pick = &c;
        break;
      }
    }
    if (!pick) throw ContractError("no variable-eliminating substitution for " + g.to_string());
    const Lineral y = b.substitute(pick->l1, pick->l2);
    g += AnfPoly::product(pick->l1, pick->l2);
    g.toggle({y.leading_var()});
  }
  b.add_linear(g.to_lineral());
  return b.finish();
}

Representation system_to_2xnf(const std::vector<AnfPoly>& polys, std::size_t num_vars, bool share_relations,
                              const SubstitutionSearch& search) {
  Builder b(num_vars);
  for (const auto& p : polys) {
    check_vars(p, num_vars);
    if (p.degree() <= 2) {
      Representation r = qanf_to_2xnf(p, b.next, search);
      // Fresh variables of r start at b.next + 1, matching the shared pool.
      for (auto& pr : r.products) b.rep.products.push_back(std::move(pr));
      for (auto& l : r.linears) b.rep.linears.push_back(std::move(l));
      for (auto& s : r.quad.substitutions) b.rep.quad.substitutions.push_back(std::move(s));
      b.next = static_cast<Var>(r.num_vars);
    } else {
      anf_into(p, b);
    }
  }

  if (share_relations && !b.rep.quad.substitutions.empty()) {
    // Expand every fresh variable into base variables; vector 0 is the constant 1.
    std::map<Var, AnfPoly> expansion;
    auto expand = [&](const Lineral& l) {
      AnfPoly p;
      if (l.constant()) p.toggle({});
      l.for_each_var([&](Var v) {
        if (v <= num_vars) {
          p.toggle({v});
        } else {
          p += expansion.at(v);
        }
      });
      return p;
    };
    std::vector<AnfPoly> polys_by_index{AnfPoly(std::vector<Monomial>{Monomial{}})};
    for (const auto& s : b.rep.quad.substitutions) {
      AnfPoly e = expand(s.l1) * expand(s.l2);
      expansion.emplace(s.y, e);
      polys_by_index.push_back(std::move(e));
    }
    std::map<Monomial, std::size_t, MonomialOrder> column;
    for (const auto& p : polys_by_index) {
      for (const auto& t : p.terms()) column.emplace(t, column.size());
    }
    std::vector<Bits> vectors;
    for (const auto& p : polys_by_index) {
      Bits v((column.size() + 63) / 64, 0);
      for (const auto& t : p.terms()) flip_bit(v, column.at(t));
      vectors.push_back(std::move(v));
    }
    for (const auto& dep : linear_dependencies(vectors, column.size())) {
      Lineral h;
      for (std::size_t i : dep) {
        if (i == 0) {
          h.flip_constant();
        } else {
          h.toggle(b.rep.quad.substitutions[i - 1].y);
        }
      }
      b.add_linear(std::move(h));
    }
  }
  return b.finish();
}

std::vector<AnfPoly> vanishing_quadrics(const std::vector<Assignment>& points, std::size_t k) {
  if (k > 16) throw InputError("vanishing_quadrics supports at most 16 coordinates");
  std::vector<Monomial> monomials{Monomial{}};
  for (Var i = 1; i <= k; ++i) monomials.push_back({i});
  for (Var i = 1; i <= k; ++i) {
    for (Var j = i + 1; j <= k; ++j) monomials.push_back({i, j});
  }
  for (const auto& p : points) {
    if (p.size() != k) throw InputError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                        std::to_string(k));
  }
  std::vector<Bits> columns;
  for (const auto& m : monomials) {
    Bits v((points.size() + 63) / 64, 0);
    for (std::size_t r = 0; r < points.size(); ++r) {
      bool val = true;
      for (Var x : m) val = val && points[r][x - 1];
      if (val) flip_bit(v, r);
    }
    columns.push_back(std::move(v));
  }
  std::vector<AnfPoly> out;
  for (const auto& dep : linear_dependencies(columns, points.size())) {
    AnfPoly p;
    for (std::size_t i : dep) p.toggle(monomials[i]);
    out.push_back(std::move(p));
  }
  return out;
}

std::string write_substitution_map(const Quadratization& q) {
  std::string out;
  for (const auto& s : q.substitutions) {
    out += "y" + std::to_string(s.y) + " = (" + s.l1.to_poly_string() + ") * (" + s.l2.to_poly_string() + ")\n";
  }
  return out;
}

}  // namespace xnf
