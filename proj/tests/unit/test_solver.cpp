#include <doctest.h>

#include <functional>
#include <random>

#include "oracle.hpp"
#include "xnf/errors.hpp"
#include "xnf/formats.hpp"
#include "xnf/solver.hpp"

using namespace xnf;

namespace {

const char* kFiveVar = "p xnf 5 7\n1 -2 0\n2 -1+3 0\n2 -4 0\n2+5 -1+3 0\n1+3 1+2+3 0\n4 -3 0\n5 -4 0\n";

Lineral L(std::initializer_list<Var> vs, bool c = false) { return Lineral(vs, c); }

std::set<Lineral> as_set(const std::vector<Lineral>& v) { return {v.begin(), v.end()}; }

// Igs over x1..x_pairs with edges given between vertex handles.
Igs make_graph(std::size_t pairs, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Igs g;
  for (std::size_t j = 0; j < pairs; ++j) g.intern(L({static_cast<Var>(j + 1)}));
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

Igs random_dag(std::mt19937_64& rng, std::size_t max_pairs) {
  const std::size_t pairs = 1 + rng() % max_pairs;
  std::vector<int> rank(pairs);
  for (auto& r : rank) r = 1 + static_cast<int>(rng() % 1000);
  auto r = [&](Vertex v) { return v & 1 ? -rank[v / 2] : rank[v / 2]; };
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t e = 0, m = 1 + rng() % (3 * pairs); e < m; ++e) {
    const Vertex a = rng() % (2 * pairs), b = rng() % (2 * pairs);
    if (r(a) < r(b)) edges.emplace_back(a, b);
  }
  return make_graph(pairs, edges);
}

std::vector<std::vector<Vertex>> out_lists(const Igs& g) {
  std::vector<std::vector<Vertex>> out(g.num_vertices());
  for (const auto& [a, b] : g.edges()) out[a].push_back(b);
  return out;
}

// Paths starting at v (the trivial path included), by plain DFS.
std::uint64_t count_paths(const std::vector<std::vector<Vertex>>& out, Vertex v) {
  std::uint64_t c = 1;
  for (Vertex w : out[v]) c += count_paths(out, w);
  return c;
}

std::size_t longest_from(const std::vector<std::vector<Vertex>>& out, Vertex v) {
  std::size_t best = 1;
  for (Vertex w : out[v]) best = std::max(best, 1 + longest_from(out, w));
  return best;
}

std::vector<std::vector<Vertex>> reversed(const std::vector<std::vector<Vertex>>& out) {
  std::vector<std::vector<Vertex>> in(out.size());
  for (Vertex a = 0; a < out.size(); ++a) {
    for (Vertex b : out[a]) in[b].push_back(a);
  }
  return in;
}

XnfFormula random_2xnf(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  XnfFormula f;
  f.num_vars = n;
  for (std::size_t i = 0; i < m; ++i) f.clauses.push_back({oracle::random_lineral(n, rng), oracle::random_lineral(n, rng)});
  return f;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("heuristic names") {
  for (Heuristic h : {Heuristic::MaxReach, Heuristic::MaxBottleneck, Heuristic::MaxPath}) {
    CHECK(parse_heuristic(to_string(h)) == h);
  }
  CHECK_THROWS_AS(parse_heuristic("vsids"), InputError);
}

TEST_CASE("maxreach") {
  // x1 -> x2, sources x1 and x2+1 both start two paths
  const Igs g = make_graph(2, {{0, 2}});
  const auto topo = *topological_order(g);
  const auto p = paths_from(g, topo);
  CHECK(p[0] == 2);
  CHECK(p[3] == 2);
  const Decision d = decide_maxreach(g);
  if (L({1}) < L({2}, true)) {
    CHECK(as_set(d.l0) == std::set<Lineral>{L({1}), L({2})});
    CHECK(d.l1 == std::vector<Lineral>{L({1}, true)});
  } else {
    CHECK(as_set(d.l0) == std::set<Lineral>{L({2}, true), L({1}, true)});
    CHECK(d.l1 == std::vector<Lineral>{L({2})});
  }

  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<std::pair<Vertex, Vertex>> chain;
    for (Vertex j = 0; j < k; ++j) chain.emplace_back(2 * j, 2 * (j + 1));
    const Igs c = make_graph(k + 1, chain);
    CHECK(paths_from(c, *topological_order(c))[0] == k + 1);
  }

  CHECK_THROWS_AS(decide_maxreach(Igs{}), ContractError);
}

TEST_CASE("path counts match enumeration on random DAGs") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    const Igs g = random_dag(rng, 15);
    const auto topo = *topological_order(g);
    const auto p = paths_from(g, topo);
    const auto q = paths_to(g, topo);
    const auto out = out_lists(g);
    const auto in = reversed(out);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      CHECK(p[v] == count_paths(out, v));
      CHECK(q[v] == count_paths(in, v));
    }
    if (g.graph_empty()) continue;
    const auto path = longest_path(g);
    std::size_t best = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) best = std::max(best, longest_from(out, v));
    CHECK(path.size() == best);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(g.has_edge(path[i], path[i + 1]));
  }
}

TEST_CASE("path counts saturate") {
  // a ladder of 70 diamonds has 2^70 paths from its start
  std::vector<std::pair<Vertex, Vertex>> edges;
  const std::size_t rungs = 70;
  // pairs: hub j is x_{3j+1}, the two sides x_{3j+2}, x_{3j+3}
  for (std::size_t j = 0; j < rungs; ++j) {
    const Vertex hub = 6 * j, a = 6 * j + 2, b = 6 * j + 4, next = 6 * (j + 1);
    edges.insert(edges.end(), {{hub, a}, {hub, b}, {a, next}, {b, next}});
  }
  const Igs g = make_graph(3 * rungs + 1, edges);
  const auto p = paths_from(g, *topological_order(g));
  CHECK(p[0] == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("maxbottleneck") {
  {
    const Igs g = make_graph(2, {{0, 2}});
    const Decision d = decide_maxbottleneck(g);
    // all four vertices score 3; the smallest label wins
    std::vector<Lineral> labels = {L({1}), L({1}, true), L({2}), L({2}, true)};
    const Lineral winner = *std::min_element(labels.begin(), labels.end());
    const Vertex w = *g.find(winner);
    std::vector<Lineral> d0, d1;
    for (Vertex v : descendants(g, w)) d0.push_back(g.label(v));
    for (Vertex v : descendants(g, Igs::partner(w))) d1.push_back(g.label(v));
    CHECK(as_set(d.l0) == as_set(d0));
    CHECK(as_set(d.l1) == as_set(d1));
  }
  {
    // star: x1 -> x2..x5
    const Igs g = make_graph(5, {{0, 2}, {0, 4}, {0, 6}, {0, 8}});
    const auto topo = *topological_order(g);
    const auto p = paths_from(g, topo);
    const auto q = paths_to(g, topo);
    CHECK(p[0] + q[0] == 4 + 1 + 1);
    for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(p[v] + q[v] <= 6);
    const Decision d = decide_maxbottleneck(g);
    const bool source = as_set(d.l0) == std::set<Lineral>{L({1}), L({2}), L({3}), L({4}), L({5})};
    const bool partner = as_set(d.l1) == std::set<Lineral>{L({1}), L({2}), L({3}), L({4}), L({5})};
    CHECK((source || partner));
  }
  {
    // bow tie a, b -> m -> c, d: m sees 3 paths each way, a only 4 + 1
    const Vertex a = 0, b = 2, m = 4, c = 6, d = 8;
    const Igs g = make_graph(5, {{a, m}, {b, m}, {m, c}, {m, d}});
    const auto out = out_lists(g);
    const auto in = reversed(out);
    auto score = [&](Vertex v) { return count_paths(out, v) + count_paths(in, v); };
    CHECK(score(m) == 6);
    CHECK(score(a) == 5);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (v != m && v != Igs::partner(m)) CHECK(score(v) < score(m));
    }
    const Decision dec = decide_maxbottleneck(g);
    const std::set<Lineral> dm = {L({3}), L({4}), L({5})};
    const std::set<Lineral> dm1 = {L({3}, true), L({1}, true), L({2}, true)};
    const bool ok = (as_set(dec.l0) == dm && as_set(dec.l1) == dm1) || (as_set(dec.l0) == dm1 && as_set(dec.l1) == dm);
    CHECK(ok);
  }
}

TEST_CASE("maxpath") {
  {
    // single edge: the path is x1 -> x2 or x2+1 -> x1+1, whichever label is smaller
    const Igs g = make_graph(2, {{0, 2}});
    const Decision d = decide_maxpath(g);
    if (L({1}) < L({2}, true)) {
      CHECK(d.l0 == std::vector<Lineral>{L({1, 2})});
      CHECK(as_set(d.l1) == std::set<Lineral>{L({1}, true), L({2})});
    } else {
      CHECK(d.l0 == std::vector<Lineral>{L({1, 2})});
      CHECK(as_set(d.l1) == std::set<Lineral>{L({2}), L({1}, true)});
    }
  }
  {
    // a -> b -> c with labels x1, x2, x3
    const Igs g = make_graph(3, {{0, 2}, {2, 4}});
    const auto path = longest_path(g);
    REQUIRE(path.size() == 3);
    const Lineral f1 = g.label(path[0]);
    const Decision d = decide_maxpath(g);
    CHECK(d.l0 == std::vector<Lineral>{f1 + g.label(path[1]), f1 + g.label(path[2])});
    CHECK(d.l1 == std::vector<Lineral>{f1.plus_one(), g.label(path[2])});
    if (path[0] == 0) {
      CHECK(as_set(d.l0) == std::set<Lineral>{L({1, 2}), L({1, 3})});
      CHECK(as_set(d.l1) == std::set<Lineral>{L({1}, true), L({3})});
    }
  }
}

TEST_CASE("dpll examples") {
  for (Heuristic h : {Heuristic::MaxReach, Heuristic::MaxBottleneck, Heuristic::MaxPath}) {
    SolverConfig cfg;
    cfg.heuristic = h;
    cfg.preprocess = true;
    const SolveResult r = dpll_solve(parse_xnf(kFiveVar), cfg);
    CHECK(r.status == Status::Sat);
    CHECK(r.model == Assignment{1, 1, 0, 0, 0});
    CHECK(r.stats.decisions == 0);

    cfg.preprocess = false;
    const SolveResult plain = dpll_solve(parse_xnf(kFiveVar), cfg);
    CHECK(plain.status == Status::Sat);
    CHECK(verify_model(parse_xnf(kFiveVar), plain.model));
  }

  const SolveResult e = dpll_solve(parse_xnf("p xnf 2 2\n1 2 0\n0\n"));
  CHECK(e.status == Status::Unsat);
  CHECK(e.stats.decisions == 0);

  const XnfFormula x = parse_xnf("p xnf 2 3\n1+2 0\n1 2 0\n-1 -2 0\n");
  const SolveResult rx = dpll_solve(x);
  CHECK(rx.status == Status::Sat);
  CHECK((rx.model == Assignment{0, 1} || rx.model == Assignment{1, 0}));

  CHECK(dpll_solve(parse_xnf("p xnf 3 0\n")).model == Assignment{0, 0, 0});
  CHECK_THROWS_AS(dpll_solve(parse_xnf("p xnf 3 1\n1 2 3 0\n")), InputError);
}

TEST_CASE("verify_model") {
  const XnfFormula ascon = read_xnf_file(XNF_TEST_DATA "/ascon_sbox.xnf");
  std::size_t sat = 0;
  for (std::uint64_t b = 0; b < 1024; ++b) sat += verify_model(ascon, oracle::point(b, 10));
  CHECK(sat == 32);
  CHECK(verify_model(parse_xnf("p xnf 2 0\n"), {1, 0}));
  CHECK_FALSE(verify_model(parse_xnf("p xnf 1 1\n0\n"), {1}));
  CHECK_FALSE(verify_model(parse_xnf("p xnf 1 1\n0\n"), {0}));
  CHECK_THROWS_AS(verify_model(parse_xnf("p xnf 2 0\n"), {1}), InputError);
}

TEST_CASE("agreement with enumeration") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = 2 + rng() % 11;
    const XnfFormula f = random_2xnf(rng, n, n + rng() % (2 * n + 1));
    const bool sat = !oracle::models(f).empty();
    for (Heuristic h : {Heuristic::MaxReach, Heuristic::MaxBottleneck, Heuristic::MaxPath}) {
      for (int flags = 0; flags < 8; ++flags) {
        SolverConfig cfg;
        cfg.heuristic = h;
        cfg.extended_igs = flags & 1;
        cfg.preprocess = flags & 2;
        cfg.tfls = !(flags & 4);
        const SolveResult r = dpll_solve(f, cfg);
        CHECK((r.status == Status::Sat) == sat);
        if (r.status == Status::Sat) CHECK(oracle::satisfies(f, r.model));
        CHECK(r.stats.peak_depth <= n + 1);
      }
    }
  }
}

TEST_CASE("decisions are proper and complete") {
  std::mt19937_64 rng(43);
  std::size_t seen = 0;
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 4 + rng() % 7;
    const XnfFormula f = random_2xnf(rng, n, 2 * n + rng() % (n + 1));
    const auto models = oracle::models(f);
    for (Heuristic h : {Heuristic::MaxReach, Heuristic::MaxBottleneck, Heuristic::MaxPath}) {
      SolverConfig cfg;
      cfg.heuristic = h;
      cfg.on_decision = [&](const Igs& g, const Decision& d) {
        ++seen;
        auto proper = [&](const std::vector<Lineral>& side) {
          return std::any_of(side.begin(), side.end(), [&](const Lineral& l) { return !g.lin().reduce(l).is_zero(); });
        };
        CHECK(proper(d.l0));
        CHECK(proper(d.l1));
        auto all_vanish = [](const std::vector<Lineral>& side, const Assignment& a) {
          return std::none_of(side.begin(), side.end(), [&](const Lineral& l) { return oracle::eval(l, a); });
        };
        for (const auto& a : models) {
          if (!g.lin().satisfied_by(a)) continue;
          CHECK((all_vanish(d.l0, a) || all_vanish(d.l1, a)));
        }
      };
      dpll_solve(f, cfg);
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("determinism") {
  std::mt19937_64 rng(44);
  for (int iter = 0; iter < 20; ++iter) {
    const XnfFormula f = random_2xnf(rng, 12, 36);
    std::vector<std::vector<Lineral>> trace[2];
    SolveResult r[2];
    for (int k = 0; k < 2; ++k) {
      SolverConfig cfg;
      cfg.on_decision = [&, k](const Igs&, const Decision& d) {
        trace[k].push_back(d.l0);
        trace[k].push_back(d.l1);
      };
      r[k] = dpll_solve(f, cfg);
    }
    CHECK(trace[0] == trace[1]);
    CHECK(r[0].status == r[1].status);
    CHECK(r[0].model == r[1].model);
    CHECK(r[0].stats.decisions == r[1].stats.decisions);
    CHECK(r[0].stats.learned_linerals == r[1].stats.learned_linerals);
    CHECK(r[0].stats.ggcp_rounds == r[1].stats.ggcp_rounds);
  }
}

TEST_CASE("timeout is its own status") {
  std::mt19937_64 rng(45);
  const XnfFormula f = random_2xnf(rng, 30, 90);
  SolverConfig cfg;
  cfg.timeout_seconds = 1e-9;
  const SolveResult r = dpll_solve(f, cfg);
  CHECK(r.status == Status::Timeout);
  CHECK(to_string(r.status) == "UNKNOWN");
}

}
