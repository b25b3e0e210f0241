#include "xnf/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "xnf/errors.hpp"

namespace xnf {

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::MaxReach:
      return "maxreach";
    case Heuristic::MaxBottleneck:
      return "maxbottleneck";
    case Heuristic::MaxPath:
      return "maxpath";
  }
  return "?";
}

Heuristic parse_heuristic(std::string_view name) {
  for (Heuristic h : {Heuristic::MaxReach, Heuristic::MaxBottleneck, Heuristic::MaxPath}) {
    if (name == to_string(h)) return h;
  }
  throw InputError("unknown heuristic '" + std::string(name) + "'");
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Sat:
      return "SATISFIABLE";
    case Status::Unsat:
      return "UNSATISFIABLE";
    case Status::Timeout:
      return "UNKNOWN";
  }
  return "?";
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::vector<Vertex> checked_topo(const Igs& g) {
  if (g.graph_empty()) throw ContractError("decision on an empty graph");
  auto topo = topological_order(g);
  if (!topo) throw ContractError("decision heuristics need an acyclic graph");
  return std::move(*topo);
}

bool better(const Igs& g, std::uint64_t score, Vertex v, std::uint64_t best_score, Vertex best) {
  if (best == std::numeric_limits<Vertex>::max()) return true;
  if (score != best_score) return score > best_score;
  return g.label(v) < g.label(best);
}

std::vector<Lineral> labels_of(const Igs& g, const std::vector<Vertex>& vs) {
  std::vector<Lineral> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(g.label(v));
  return out;
}

std::vector<bool> incident(const Igs& g) {
  std::vector<bool> has(g.num_vertices(), false);
  for (const auto& [a, b] : g.edges()) has[a] = has[b] = true;
  return has;
}

}  // namespace

std::vector<std::uint64_t> paths_from(const Igs& g, const std::vector<Vertex>& topo) {
  const Adjacency out = g.out_adjacency();
  std::vector<std::uint64_t> p(g.num_vertices(), 1);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (Vertex w : out[*it]) p[*it] = sat_add(p[*it], p[w]);
  }
  return p;
}

std::vector<std::uint64_t> paths_to(const Igs& g, const std::vector<Vertex>& topo) {
  const Adjacency in = g.in_adjacency();
  std::vector<std::uint64_t> q(g.num_vertices(), 1);
  for (Vertex v : topo) {
    for (Vertex u : in[v]) q[v] = sat_add(q[v], q[u]);
  }
  return q;
}

Decision decide_maxreach(const Igs& g) {
  const auto topo = checked_topo(g);
  const auto p = paths_from(g, topo);
  const auto has = incident(g);
  Vertex best = std::numeric_limits<Vertex>::max();
  for (Vertex s : sources(g)) {
    if (has[s] && better(g, p[s], s, best == std::numeric_limits<Vertex>::max() ? 0 : p[best], best)) best = s;
  }
  return {labels_of(g, descendants(g, best)), {g.label(Igs::partner(best))}};
}

Decision decide_maxbottleneck(const Igs& g) {
  const auto topo = checked_topo(g);
  const auto p = paths_from(g, topo);
  const auto q = paths_to(g, topo);
  const auto has = incident(g);
  Vertex best = std::numeric_limits<Vertex>::max();
  std::uint64_t best_score = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!has[v]) continue;
    const std::uint64_t score = sat_add(p[v], q[v]);
    if (better(g, score, v, best_score, best)) {
      best = v;
      best_score = score;
    }
  }
  return {labels_of(g, descendants(g, best)), labels_of(g, descendants(g, Igs::partner(best)))};
}

std::vector<Vertex> longest_path(const Igs& g) {
  const auto topo = checked_topo(g);
  const Adjacency out = g.out_adjacency();
  const std::size_t n = g.num_vertices();
  constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
  std::vector<std::uint64_t> len(n, 1);
  std::vector<Vertex> next(n, kNone);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const Vertex v = *it;
    for (Vertex w : out[v]) {
      if (next[v] == kNone || len[w] > len[next[v]] ||
          (len[w] == len[next[v]] && g.label(w) < g.label(next[v]))) {
        next[v] = w;
      }
    }
    if (next[v] != kNone) len[v] = 1 + len[next[v]];
  }
  Vertex best = kNone;
  for (Vertex v = 0; v < n; ++v) {
    if (next[v] != kNone && better(g, len[v], v, best == kNone ? 0 : len[best], best)) best = v;
  }
  std::vector<Vertex> path;
  for (Vertex v = best; v != kNone; v = next[v]) path.push_back(v);
  return path;
}

Decision decide_maxpath(const Igs& g) {
  const auto path = longest_path(g);
  const Lineral& f1 = g.label(path.front());
  Decision d;
  for (std::size_t i = 1; i < path.size(); ++i) d.l0.push_back(f1 + g.label(path[i]));
  d.l1 = {f1.plus_one(), g.label(path.back())};
  return d;
}

Decision decide(const Igs& g, Heuristic h) {
  switch (h) {
    case Heuristic::MaxReach:
      return decide_maxreach(g);
    case Heuristic::MaxBottleneck:
      return decide_maxbottleneck(g);
    case Heuristic::MaxPath:
      return decide_maxpath(g);
  }
  throw ContractError("unknown heuristic");
}

SolveResult dpll_solve(const XnfFormula& f, const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  if (!f.is_2xnf()) throw InputError("solver needs a 2-XNF formula; convert it first");
  if (f.max_var() > f.num_vars) throw InputError("formula mentions variables beyond its header");

  SolveResult res;
  auto absorb = [&](const PropStats& p) {
    res.stats.ggcp_rounds += p.ggcp_rounds;
    res.stats.learned_linerals += p.learned;
  };

  struct Frame {
    Igs g;
    std::vector<Lineral> assume;
    std::size_t depth;
  };
  std::vector<Frame> stack;
  {
    Igs root = trivial_igs(f, config.extended_igs);
    if (config.preprocess) absorb(preprocess(root, config.edge_extension));
    stack.push_back({std::move(root), {}, 0});
  }

  while (!stack.empty()) {
    if (config.timeout_seconds && elapsed() > *config.timeout_seconds) {
      res.status = Status::Timeout;
      res.stats.wall_time = elapsed();
      return res;
    }
    Frame fr = std::move(stack.back());
    stack.pop_back();
    res.stats.peak_depth = std::max(res.stats.peak_depth, fr.depth);
    Igs& g = fr.g;
    for (const auto& l : fr.assume) g.learn(l);

    while (true) {
      absorb(cr_ggcp(g));
      if (!g.consistent() || !config.tfls) break;
      bool grew = false;
      for (const auto& l : tfls(g)) {
        if (g.learn(l.plus_one())) {
          grew = true;
          ++res.stats.learned_linerals;
        }
      }
      if (!grew) break;
    }
    if (!g.consistent()) continue;

    if (g.graph_empty()) {
      auto model = g.lin().solve(f.num_vars);
      if (!model || !verify_model(f, *model)) throw ContractError("solver produced an invalid model");
      res.status = Status::Sat;
      res.model = std::move(*model);
      res.stats.wall_time = elapsed();
      return res;
    }

    Decision d = decide(g, config.heuristic);
    ++res.stats.decisions;
    if (config.on_decision) config.on_decision(g, d);
    // l0 is explored first, so it goes on top.
    stack.push_back({g, std::move(d.l1), fr.depth + 1});
    stack.push_back({std::move(g), std::move(d.l0), fr.depth + 1});
  }
  res.status = Status::Unsat;
  res.stats.wall_time = elapsed();
  return res;
}

}  // namespace xnf
