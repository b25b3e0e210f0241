#include <doctest.h>

#include <functional>
#include <random>

#include "oracle.hpp"
#include "xnf/errors.hpp"
#include "xnf/formats.hpp"
#include "xnf/igs.hpp"

using namespace xnf;

namespace {

const char* kFiveVar = "p xnf 5 7\n1 -2 0\n2 -1+3 0\n2 -4 0\n2+5 -1+3 0\n1+3 1+2+3 0\n4 -3 0\n5 -4 0\n";

Lineral L(std::initializer_list<Var> vs, bool c = false) { return Lineral(vs, c); }

using LabelEdges = std::set<std::pair<Lineral, Lineral>>;

LabelEdges label_edges(const Igs& g) {
  LabelEdges out;
  for (const auto& [a, b] : g.edges()) out.emplace(g.label(a), g.label(b));
  return out;
}

// Adds the skew partner of every listed edge.
LabelEdges skew_close(LabelEdges e) {
  LabelEdges out = e;
  for (const auto& [a, b] : e) out.emplace(b.plus_one(), a.plus_one());
  return out;
}

bool skew_symmetric(const Igs& g) {
  for (const auto& [a, b] : g.edges()) {
    if (a == b || !g.has_edge(Igs::partner(b), Igs::partner(a))) return false;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.label(Igs::partner(v)) != g.label(v).plus_one()) return false;
  }
  return true;
}

bool sigma_reduced(const Igs& g) {
  for (const auto& l : g.labels()) {
    for (Var v : l.vars()) {
      if (g.lin().pivot_row(v) != nullptr) return false;
    }
  }
  return true;
}

// Reachability by DFS from scratch.
std::vector<bool> reach(const Igs& g, Vertex s) {
  std::vector<bool> seen(g.num_vertices(), false);
  std::function<void(Vertex)> go = [&](Vertex v) {
    if (seen[v]) return;
    seen[v] = true;
    for (const auto& [a, b] : g.edges()) {
      if (a == v) go(b);
    }
  };
  go(s);
  return seen;
}

}  // namespace

TEST_SUITE("igs") {

TEST_CASE("trivial IGS of the five-variable example") {
  const Igs g = trivial_igs(parse_xnf(kFiveVar));
  CHECK(g.lin().empty());
  CHECK(g.num_vertices() == 16);
  CHECK(g.edges().size() == 14);
  const LabelEdges expected = skew_close({
      {L({1}), L({2})},
      {L({2}), L({1, 3})},
      {L({2, 5}), L({1, 3})},
      {L({1, 3}), L({1, 2, 3}, true)},
      {L({2}), L({4})},
      {L({5}), L({4})},
      {L({4}), L({3})},
  });
  CHECK(label_edges(g) == expected);
  CHECK(skew_symmetric(g));
}

TEST_CASE("ggcp after learning x1+x2") {
  Igs g = trivial_igs(parse_xnf(kFiveVar));
  g.learn(L({1, 2}));
  ggcp(g);
  CHECK(oracle::same_span({g.lin().rows().begin(), g.lin().rows().end()}, {L({1, 2})}));
  CHECK(g.num_vertices() == 12);
  const LabelEdges expected = skew_close({
      {L({2}), L({2, 3})},
      {L({2, 5}), L({2, 3})},
      {L({2}), L({4})},
      {L({5}), L({4})},
      {L({4}), L({3})},
      {L({2, 3}), L({3}, true)},
  });
  CHECK(label_edges(g) == expected);
  CHECK(sigma_reduced(g));

  // already reduced: nothing changes
  const auto before = label_edges(g);
  ggcp(g);
  CHECK(label_edges(g) == before);

  SUBCASE("tfls finds x2, then cycle removal finishes") {
    const auto failed = tfls(g);
    CHECK(failed == std::vector<Lineral>{L({2})});
    g.learn(L({2}, true));
    ggcp(g);
    CHECK(g.num_vertices() == 6);
    CHECK(g.edges().size() == 6);
    const SccResult scc = scc_condense(g);
    CHECK_FALSE(scc.parity_odd);
    CHECK(oracle::same_span(scc.learned, {L({3, 5}), L({4, 5})}));
    cr_ggcp(g);
    CHECK(g.graph_empty());
    CHECK(oracle::same_span({g.lin().rows().begin(), g.lin().rows().end()},
                            {L({1}, true), L({2}, true), L({3, 5}), L({4, 5})}));
  }
}

TEST_CASE("preprocess on the five-variable example") {
  Igs g = trivial_igs(parse_xnf(kFiveVar));
  {
    const Vertex v = *g.find(L({2}));
    std::vector<Lineral> d0, d1;
    for (Vertex w : descendants(g, v)) d0.push_back(g.label(w));
    for (Vertex w : descendants(g, Igs::partner(v))) d1.push_back(g.label(w));
    CHECK(oracle::span(intersect_spans(d0, d1)).count(L({1, 2})));
  }
  preprocess(g);
  CHECK(g.graph_empty());
  CHECK(g.num_vertices() == 0);
  CHECK(oracle::same_span({g.lin().rows().begin(), g.lin().rows().end()},
                          {L({1}, true), L({2}, true), L({3, 5}), L({4, 5})}));

  Igs empty;
  preprocess(empty);
  CHECK(empty.graph_empty());
  CHECK(empty.lin().empty());
}

TEST_CASE("trivial IGS edge cases") {
  const Igs units = trivial_igs(parse_xnf("p xnf 3 2\n1+2 0\n-3 0\n"));
  CHECK(units.graph_empty());
  CHECK(oracle::same_span({units.lin().rows().begin(), units.lin().rows().end()}, {L({1, 2}, true), L({3})}));

  // clause ¬X1 ∨ ¬X2 is the product x1*x2
  const Igs ext = trivial_igs(parse_xnf("p xnf 2 1\n-1 -2 0\n"), true);
  CHECK(ext.num_vertices() == 6);
  CHECK(ext.edges().size() == 6);
  CHECK(ext.find(L({1, 2})).has_value());
  CHECK(skew_symmetric(ext));

  CHECK_THROWS_AS(trivial_igs(parse_xnf("p xnf 3 1\n1 2 3 0\n")), InputError);
  CHECK_FALSE(trivial_igs(parse_xnf("p xnf 1 1\n0\n")).consistent());
}

TEST_CASE("ggcp harvests forced linerals") {
  Igs g;
  g.add_edge(g.intern(L({1})), g.intern(L({2, 3})));
  g.learn(L({1}));  // the tail vanishes, so does the head
  ggcp(g);
  CHECK(g.lin().contains(L({2, 3})));
  CHECK(g.graph_empty());

  Igs h;
  h.add_edge(h.intern(L({1})), h.intern(L({2})));
  h.learn(L({2}, true));  // head reduces to 1: learn tail + 1
  ggcp(h);
  CHECK(h.lin().contains(L({1}, true)));

  Igs k;
  k.add_edge(k.intern(L({1})), k.intern(L({2})));
  k.add_edge(k.intern(L({3})), k.intern(L({4})));
  k.learn(L({1, 3}));  // merges x1 and x3
  ggcp(k);
  CHECK(k.num_vertices() == 6);
  CHECK(skew_symmetric(k));
  CHECK(sigma_reduced(k));
}

TEST_CASE("scc_condense") {
  Igs acyclic;
  acyclic.add_edge(acyclic.intern(L({1})), acyclic.intern(L({2})));
  const SccResult a = scc_condense(acyclic);
  CHECK(a.components.size() == 4);
  CHECK(a.learned.empty());
  CHECK_FALSE(a.parity_odd);

  // x1 -> x2 -> x1+1 -> x2+1 -> x1: one component holding both x1 and x1+1
  Igs odd;
  const Vertex x1 = odd.intern(L({1})), x2 = odd.intern(L({2}));
  odd.add_edge(x1, x2);
  odd.add_edge(x2, Igs::partner(x1));
  odd.add_edge(Igs::partner(x1), Igs::partner(x2));
  odd.add_edge(Igs::partner(x2), x1);
  CHECK(odd.edges().size() == 8);
  const SccResult o = scc_condense(odd);
  CHECK(o.components.size() == 1);
  CHECK(o.parity_odd);
  cr_ggcp(odd);
  CHECK_FALSE(odd.consistent());
}

TEST_CASE("cr_ggcp on an unsatisfiable two-variable formula") {
  const XnfFormula f = parse_xnf("p xnf 2 4\n1 2 0\n-1 -2 0\n1 -2 0\n-1 2 0\n");
  REQUIRE(oracle::models(f).empty());
  Igs g = trivial_igs(f);
  cr_ggcp(g);
  CHECK_FALSE(g.consistent());
  CHECK(g.graph_empty());
}

TEST_CASE("tfls small cases") {
  Igs empty;
  CHECK(tfls(empty).empty());

  Igs g;
  const Vertex f = g.intern(L({1})), v = g.intern(L({2}));
  g.add_edge(f, v);
  g.add_edge(f, Igs::partner(v));
  CHECK(tfls(g) == std::vector<Lineral>{L({1})});

  Igs cyc;
  const Vertex a = cyc.intern(L({1})), b = cyc.intern(L({2}));
  cyc.add_edge(a, b);
  cyc.add_edge(b, a);
  CHECK_THROWS_AS(tfls(cyc), ContractError);
}

TEST_CASE("tfls matches reachability on random DAGs") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t pairs = 1 + rng() % 20;
    Igs g;
    std::vector<int> rank(pairs);
    for (std::size_t j = 0; j < pairs; ++j) {
      g.intern(L({static_cast<Var>(j + 1)}));
      rank[j] = 1 + static_cast<int>(rng() % 1000);
    }
    auto r = [&](Vertex v) { return v & 1 ? -rank[v / 2] : rank[v / 2]; };
    for (std::size_t e = 0, m = rng() % (3 * pairs); e < m; ++e) {
      const Vertex a = rng() % (2 * pairs), b = rng() % (2 * pairs);
      if (r(a) < r(b)) g.add_edge(a, b);
    }
    REQUIRE(topological_order(g).has_value());
    std::vector<Lineral> expected;
    for (Vertex f = 0; f < g.num_vertices(); ++f) {
      const auto d = reach(g, f);
      bool failed = false;
      for (Vertex v = 0; v < g.num_vertices(); ++v) failed = failed || (d[v] && d[Igs::partner(v)]);
      if (failed) expected.push_back(g.label(f));
    }
    std::sort(expected.begin(), expected.end());
    CHECK(tfls(g) == expected);

    // descendants agree with DFS
    const Vertex s = rng() % g.num_vertices();
    const auto d = reach(g, s);
    std::set<Vertex> got;
    for (Vertex v : descendants(g, s)) got.insert(v);
    for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(got.count(v) == static_cast<std::size_t>(d[v]));
  }
}

TEST_CASE("soundness on random formulas") {
  std::mt19937_64 rng(32);
  for (int iter = 0; iter < 150; ++iter) {
    XnfFormula f;
    f.num_vars = 2 + rng() % 8;
    for (std::size_t i = 0, m = rng() % (3 * f.num_vars); i < m; ++i) {
      f.clauses.push_back({oracle::random_lineral(f.num_vars, rng), oracle::random_lineral(f.num_vars, rng)});
    }
    const auto models = oracle::models(f);
    for (int mode = 0; mode < 3; ++mode) {
      Igs g = trivial_igs(f, rng() & 1);
      if (mode == 0) cr_ggcp(g);
      if (mode == 1) preprocess(g, false);
      if (mode == 2) preprocess(g, true);
      if (models.empty()) continue;
      REQUIRE(g.consistent());
      CHECK(skew_symmetric(g));
      CHECK(sigma_reduced(g));
      if (mode == 0) CHECK(topological_order(g).has_value());
      for (const auto& a : models) {
        for (const auto& r : g.lin().rows()) CHECK_FALSE(oracle::eval(r, a));
        // every edge (f, g): f vanishes => g vanishes
        for (const auto& [u, v] : g.edges()) CHECK((oracle::eval(g.label(u), a) || !oracle::eval(g.label(v), a)));
      }
    }
  }
}

TEST_CASE("dot output") {
  Igs g;
  const Vertex a = g.intern(L({1}));
  const Vertex b = g.intern(L({2}));
  g.add_edge(a, b);
  const std::string dot = g.to_dot();
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("label=\"x2+1\"") != std::string::npos);
  CHECK(dot.find("v0 -> v2;") != std::string::npos);
}

}
