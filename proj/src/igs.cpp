#include "xnf/igs.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "xnf/errors.hpp"

namespace xnf {

// ---- Igs -------------------------------------------------------------------

bool Igs::learn(const Lineral& l) {
  const bool grew = lin_.insert(l);
  if (grew && !lin_.consistent()) clear_graph();
  return grew;
}

void Igs::rebuild_index() {
  index_.clear();
  for (std::size_t v = 0; v < labels_.size(); v += 2) index_.emplace(labels_[v], static_cast<Vertex>(v));
  index_stale_ = false;
}

Vertex Igs::intern(const Lineral& l) {
  if (l.is_constant()) throw ContractError("constant vertex label");
  if (index_stale_) rebuild_index();
  Lineral key = l;
  key.set_constant(false);
  auto it = index_.find(key);
  if (it == index_.end()) {
    const auto base = static_cast<Vertex>(labels_.size());
    labels_.push_back(key);
    labels_.push_back(key.plus_one());
    it = index_.emplace(std::move(key), base).first;
  }
  return it->second + (l.constant() ? 1 : 0);
}

std::optional<Vertex> Igs::find(const Lineral& l) const {
  Lineral key = l;
  key.set_constant(false);
  if (index_stale_) {
    for (std::size_t v = 0; v < labels_.size(); v += 2) {
      if (labels_[v] == key) return static_cast<Vertex>(v) + (l.constant() ? 1 : 0);
    }
    return std::nullopt;
  }
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second + (l.constant() ? 1 : 0);
}

bool Igs::add_edge(Vertex a, Vertex b) {
  if (a == b) return false;
  bool added = false;
  for (const Edge& e : {Edge{a, b}, Edge{partner(b), partner(a)}}) {
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) {
      edges_.insert(it, e);
      added = true;
    }
  }
  return added;
}

bool Igs::has_edge(Vertex a, Vertex b) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

namespace {

Adjacency build_adjacency(std::size_t n, const std::vector<Edge>& edges, bool reverse) {
  Adjacency adj;
  adj.offset.assign(n + 1, 0);
  for (const auto& [a, b] : edges) ++adj.offset[(reverse ? b : a) + 1];
  for (std::size_t i = 0; i < n; ++i) adj.offset[i + 1] += adj.offset[i];
  adj.target.resize(edges.size());
  std::vector<std::size_t> fill(adj.offset.begin(), adj.offset.end() - 1);
  for (const auto& [a, b] : edges) {
    if (reverse) {
      adj.target[fill[b]++] = a;
    } else {
      adj.target[fill[a]++] = b;
    }
  }
  return adj;
}

}  // namespace

Adjacency Igs::out_adjacency() const { return build_adjacency(labels_.size(), edges_, false); }
Adjacency Igs::in_adjacency() const { return build_adjacency(labels_.size(), edges_, true); }

void Igs::normalize_edges() {
  const std::size_t n = edges_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = edges_[i];
    edges_.emplace_back(partner(b), partner(a));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

void Igs::reset_graph(std::vector<Lineral> pair_labels, std::vector<Edge> edges) {
  labels_.clear();
  labels_.reserve(2 * pair_labels.size());
  index_.clear();
  index_stale_ = true;  // rebuilt on the next intern
  for (auto& l : pair_labels) {
    l.set_constant(false);
    labels_.push_back(l);
    labels_.push_back(l.plus_one());
  }
  edges_ = std::move(edges);
  normalize_edges();
}

void Igs::compact() {
  const std::size_t pairs = labels_.size() / 2;
  std::vector<bool> used(pairs, false);
  for (const auto& [a, b] : edges_) used[a / 2] = used[b / 2] = true;
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<Vertex> remap(pairs, std::numeric_limits<Vertex>::max());
  std::vector<Lineral> kept;
  for (std::size_t j = 0; j < pairs; ++j) {
    if (!used[j]) continue;
    remap[j] = static_cast<Vertex>(kept.size());
    kept.push_back(labels_[2 * j]);
  }
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& [a, b] : edges_) edges.emplace_back(2 * remap[a / 2] + (a & 1), 2 * remap[b / 2] + (b & 1));
  reset_graph(std::move(kept), std::move(edges));
}

void Igs::clear_graph() {
  labels_.clear();
  index_.clear();
  index_stale_ = false;
  edges_.clear();
}

std::string Igs::to_dot() const {
  std::string out = "digraph igs {\n";
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    out += "  v" + std::to_string(v) + " [label=\"" + labels_[v].to_poly_string() + "\"];\n";
  }
  for (const auto& [a, b] : edges_) out += "  v" + std::to_string(a) + " -> v" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

// ---- construction ------------------------------------------------------------

Igs trivial_igs(const XnfFormula& f, bool extended) {
  Igs g;
  for (const auto& clause : f.clauses) {
    if (clause.size() > 2) {
      throw InputError("implication graph needs 2-XNF; found a clause with " + std::to_string(clause.size()) +
                       " linerals");
    }
    if (clause.empty()) {
      g.learn(Lineral::one());
      continue;
    }
    if (clause.size() == 1) {
      g.learn(clause[0].plus_one());
      continue;
    }
    const Lineral p = clause[0].plus_one();
    const Lineral q = clause[1].plus_one();
    // Degenerate products need no edges.
    if (p.is_zero() || q.is_zero()) continue;
    if (p.is_one()) {
      g.learn(q);
      continue;
    }
    if (q.is_one() || p == q) {
      g.learn(p);
      continue;
    }
    if (p == q.plus_one()) continue;

    g.add_edge(g.intern(p.plus_one()), g.intern(q));
    if (extended) {
      const Lineral s = p + q;
      g.add_edge(g.intern(p.plus_one()), g.intern(s.plus_one()));
      g.add_edge(g.intern(s), g.intern(q));
    }
  }
  if (!g.consistent()) g.clear_graph();
  return g;
}

// ---- propagation -------------------------------------------------------------

PropStats ggcp(Igs& g) {
  PropStats st;
  if (!g.consistent()) {
    g.clear_graph();
    return st;
  }
  constexpr Vertex kZero = std::numeric_limits<Vertex>::max() - 1;
  constexpr Vertex kOne = std::numeric_limits<Vertex>::max();

  while (true) {
    ++st.ggcp_rounds;
    const std::size_t pairs = g.num_vertices() / 2;
    // Reduced label of each old pair: support plus constant shift.
    std::vector<Lineral> reduced(pairs);
    std::vector<bool> shift(pairs);
    std::vector<Vertex> order;
    order.reserve(pairs);
    bool relabelled = false;
    for (std::size_t j = 0; j < pairs; ++j) {
      const Lineral& old = g.label(static_cast<Vertex>(2 * j));
      reduced[j] = g.lin().reduce(old);
      shift[j] = reduced[j].constant();
      reduced[j].set_constant(false);
      relabelled = relabelled || shift[j] || reduced[j] != old;
      if (!reduced[j].is_zero()) order.push_back(static_cast<Vertex>(j));
    }
    if (!relabelled) {
      // Labels are already reduced and distinct; only (v, v+1) edges or
      // isolated pairs would still need work.
      std::vector<bool> used(pairs, false);
      bool clean = true;
      for (const auto& [a, b] : g.edges()) {
        clean = clean && b != Igs::partner(a);
        used[a / 2] = used[b / 2] = true;
      }
      if (clean && std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return st;
    }
    // Pairs whose reduced labels collide become one pair.
    std::sort(order.begin(), order.end(), [&](Vertex x, Vertex y) {
      const auto c = reduced[x] <=> reduced[y];
      return c != 0 ? c < 0 : x < y;
    });
    std::vector<Vertex> pair_map(pairs, 0);
    std::vector<Vertex> rep;  // new pair -> old pair carrying its label
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || reduced[order[i]] != reduced[order[i - 1]]) rep.push_back(order[i]);
      pair_map[order[i]] = static_cast<Vertex>(rep.size() - 1);
    }
    auto map_vertex = [&](Vertex v) -> Vertex {
      const std::size_t j = v / 2;
      const bool c = shift[j] ^ static_cast<bool>(v & 1);
      if (reduced[j].is_zero()) return c ? kOne : kZero;
      return 2 * pair_map[j] + (c ? 1 : 0);
    };
    auto label_of = [&](Vertex nv) {
      Lineral l = reduced[rep[nv / 2]];
      if (nv & 1) l.flip_constant();
      return l;
    };

    std::vector<Lineral> learned;
    std::vector<Edge> kept;
    kept.reserve(g.edges().size());
    for (const auto& [a, b] : g.edges()) {
      const Vertex fa = map_vertex(a);
      const Vertex fb = map_vertex(b);
      if (fa == kOne || fb == kZero) continue;  // product vanishes identically
      if (fa == kZero) {
        learned.push_back(fb == kOne ? Lineral::one() : label_of(fb));
      } else if (fb == kOne) {
        learned.push_back(label_of(fa).plus_one());
      } else if (fa == fb) {
        continue;
      } else if (fa == Igs::partner(fb)) {
        // (g'+1+1) * g' = g'
        learned.push_back(label_of(fb));
      } else {
        kept.emplace_back(fa, fb);
      }
    }

    bool grew = false;
    for (const auto& l : learned) {
      if (g.learn(l)) {
        grew = true;
        ++st.learned;
      }
      if (!g.consistent()) return st;
    }

    // Drop pairs left without edges while installing the new graph.
    std::vector<Vertex> remap(rep.size(), std::numeric_limits<Vertex>::max());
    for (const auto& [a, b] : kept) remap[a / 2] = remap[b / 2] = 0;
    std::vector<Lineral> new_labels;
    for (std::size_t p = 0; p < rep.size(); ++p) {
      if (remap[p] == 0) {
        remap[p] = static_cast<Vertex>(new_labels.size());
        new_labels.push_back(std::move(reduced[rep[p]]));
      }
    }
    for (auto& [a, b] : kept) {
      a = 2 * remap[a / 2] + (a & 1);
      b = 2 * remap[b / 2] + (b & 1);
    }
    g.reset_graph(std::move(new_labels), std::move(kept));
    if (!grew) return st;
  }
}

SccResult scc_condense(const Igs& g) {
  SccResult res;
  const std::size_t n = g.num_vertices();
  const Adjacency out = g.out_adjacency();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::size_t counter = 0;

  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      const auto succ = out[fr.v];
      if (fr.next < succ.size()) {
        const Vertex w = succ[fr.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
        continue;
      }
      const Vertex v = fr.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end(), [&](Vertex x, Vertex y) { return g.label(x) < g.label(y); });
        for (std::size_t i = 1; i < comp.size(); ++i) res.learned.push_back(g.label(comp[0]) + g.label(comp[i]));
        res.components.push_back(std::move(comp));
      }
    }
  }
  res.parity_odd = res.components.size() % 2 == 1;
  return res;
}

PropStats cr_ggcp(Igs& g) {
  PropStats st;
  while (true) {
    st += ggcp(g);
    if (!g.consistent()) return st;
    const SccResult scc = scc_condense(g);
    if (scc.parity_odd) {
      g.learn(Lineral::one());
      ++st.learned;
      return st;
    }
    bool grew = false;
    for (const auto& l : scc.learned) {
      if (g.learn(l)) {
        grew = true;
        ++st.learned;
      }
    }
    if (!grew) return st;
  }
}

// ---- reachability ------------------------------------------------------------

std::optional<std::vector<Vertex>> topological_order(const Igs& g) {
  const std::size_t n = g.num_vertices();
  const Adjacency out = g.out_adjacency();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& e : g.edges()) ++indeg[e.second];
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    if (indeg[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex w : out[order[i]]) {
      if (--indeg[w] == 0) order.push_back(w);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::vector<Vertex> sources(const Igs& g) {
  std::vector<bool> has_in(g.num_vertices(), false);
  for (const auto& e : g.edges()) has_in[e.second] = true;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!has_in[v]) out.push_back(v);
  }
  return out;
}

namespace {

// BFS that stamps visited vertices with `mark` instead of clearing a bitmap.
void bfs(const Adjacency& adj, Vertex start, std::vector<std::uint32_t>& seen, std::uint32_t mark,
         std::vector<Vertex>& order) {
  order.clear();
  order.push_back(start);
  seen[start] = mark;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex w : adj[order[i]]) {
      if (seen[w] != mark) {
        seen[w] = mark;
        order.push_back(w);
      }
    }
  }
}

}  // namespace

std::vector<Vertex> descendants(const Igs& g, Vertex v) {
  const Adjacency out = g.out_adjacency();
  std::vector<std::uint32_t> seen(g.num_vertices(), 0);
  std::vector<Vertex> order;
  bfs(out, v, seen, 1, order);
  return order;
}

std::vector<Lineral> tfls(const Igs& g) {
  if (!topological_order(g)) throw ContractError("tfls needs an acyclic implication graph");
  const std::size_t n = g.num_vertices();
  const Adjacency out = g.out_adjacency();
  const Adjacency in = g.in_adjacency();
  std::vector<std::uint32_t> seen(n, 0), seen_a(n, 0), seen_b(n, 0);
  std::uint32_t mark = 0, amark = 0;
  std::vector<bool> pair_done(n / 2, false), failed(n, false);
  std::vector<Vertex> d, anc_a, anc_b;

  for (Vertex s : sources(g)) {
    bfs(out, s, seen, ++mark, d);
    for (Vertex v : d) {
      if (seen[Igs::partner(v)] != mark || pair_done[v / 2]) continue;
      pair_done[v / 2] = true;
      ++amark;
      bfs(in, v & ~1u, seen_a, amark, anc_a);
      bfs(in, v | 1u, seen_b, amark, anc_b);
      for (Vertex a : anc_a) {
        if (seen_b[a] == amark) failed[a] = true;
      }
    }
  }
  std::vector<Lineral> res;
  for (Vertex v = 0; v < n; ++v) {
    if (failed[v]) res.push_back(g.label(v));
  }
  std::sort(res.begin(), res.end());
  return res;
}

PropStats preprocess(Igs& g, bool edge_extension) {
  PropStats st;
  while (true) {
    st += ggcp(g);
    if (!g.consistent()) return st;
    const std::size_t n = g.num_vertices();
    if (n == 0) return st;
    const Adjacency out = g.out_adjacency();

    std::vector<std::vector<Lineral>> delta(n);
    {
      std::vector<std::uint32_t> seen(n, 0);
      std::vector<Vertex> order;
      for (Vertex v = 0; v < n; ++v) {
        bfs(out, v, seen, v + 1, order);
        for (Vertex w : order) delta[v].push_back(g.label(w));
      }
    }

    bool progress = false;
    for (Vertex v = 0; v < n; v += 2) {
      for (const auto& l : intersect_spans(delta[v], delta[v + 1])) {
        if (g.learn(l)) {
          progress = true;
          ++st.learned;
        }
        if (!g.consistent()) return st;
      }
    }

    if (edge_extension) {
      // Δ_f ∩ (1 + Δ_h) ≠ ∅ gives (f+1)(h+1) ∈ I, i.e. the edge (f, h+1).
      std::set<Edge> candidates;
      const auto topo = topological_order(g);
      if (topo) {
        // Only descendants of meeting source pairs can meet.
        const auto src = sources(g);
        std::vector<std::vector<Vertex>> dsrc;
        for (Vertex s : src) dsrc.push_back(descendants(g, s));
        for (std::size_t i = 0; i < src.size(); ++i) {
          for (std::size_t j = i; j < src.size(); ++j) {
            if (!meets_shifted(delta[src[i]], delta[src[j]])) continue;
            for (Vertex f : dsrc[i]) {
              for (Vertex h : dsrc[j]) candidates.emplace(std::min(f, h), std::max(f, h));
            }
          }
        }
      } else {
        for (Vertex f = 0; f < n; ++f) {
          for (Vertex h = f + 1; h < n; ++h) candidates.emplace(f, h);
        }
      }
      for (const auto& [f, h] : candidates) {
        if (f == h || h == Igs::partner(f)) continue;
        if (g.has_edge(f, Igs::partner(h))) continue;
        if (meets_shifted(delta[f], delta[h]) && g.add_edge(f, Igs::partner(h))) progress = true;
      }
    }
    if (!progress) return st;
  }
}

}  // namespace xnf
