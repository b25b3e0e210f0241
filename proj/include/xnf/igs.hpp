#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xnf/formula.hpp"
#include "xnf/lineral.hpp"
#include "xnf/linsys.hpp"

namespace xnf {

using Vertex = std::uint32_t;
/// (a, b) records (label(a)+1) * label(b) ∈ I_F: if a vanishes, so does b.
using Edge = std::pair<Vertex, Vertex>;

/// Compressed adjacency lists.
struct Adjacency {
  std::vector<std::size_t> offset;  // size num_vertices + 1
  std::vector<Vertex> target;

  std::span<const Vertex> operator[](Vertex v) const {
    return {target.data() + offset[v], offset[v + 1] - offset[v]};
  }
};

/// Implication graph structure (L, V, E).
///
/// Vertices come in skew pairs: handle 2j carries a label with constant 0 and
/// handle 2j+1 the same support with constant 1, so partner(v) = v ^ 1 is
/// label + 1. Edges are kept closed under (a, b) -> (b^1, a^1).
class Igs {
 public:
  Igs() = default;

  static constexpr Vertex partner(Vertex v) noexcept { return v ^ 1u; }

  const LinSystem& lin() const noexcept { return lin_; }
  bool consistent() const noexcept { return lin_.consistent(); }
  /// Adds a lineral to L. Returns true iff span(L) grew. Learning anything
  /// that makes L inconsistent also clears the graph.
  bool learn(const Lineral& l);

  std::size_t num_vertices() const noexcept { return labels_.size(); }
  const Lineral& label(Vertex v) const { return labels_[v]; }
  const std::vector<Lineral>& labels() const noexcept { return labels_; }

  /// Vertex labelled `l`, created together with its partner when absent.
  /// `l` must not be constant.
  Vertex intern(const Lineral& l);
  std::optional<Vertex> find(const Lineral& l) const;

  /// Inserts (a, b) and its skew partner. Self-loops are rejected. Returns
  /// true iff the edge was new.
  bool add_edge(Vertex a, Vertex b);
  bool has_edge(Vertex a, Vertex b) const;
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool graph_empty() const noexcept { return edges_.empty(); }

  Adjacency out_adjacency() const;
  Adjacency in_adjacency() const;

  /// Removes vertex pairs without incident edges and renumbers the rest.
  void compact();
  void clear_graph();

  std::string to_dot() const;

  /// Replaces V and E wholesale; used by propagation, which rebuilds the
  /// graph every round. `labels` holds the even (constant 0) labels in pair
  /// order; edges need not be sorted or skew-closed.
  void reset_graph(std::vector<Lineral> pair_labels, std::vector<Edge> edges);

 private:
  void normalize_edges();
  void rebuild_index();

  LinSystem lin_;
  std::vector<Lineral> labels_;
  std::unordered_map<Lineral, Vertex> index_;  // constant-free support -> even handle
  std::vector<Edge> edges_;                    // sorted, unique, skew-closed
  bool index_stale_ = false;
};

/// Work counters shared by the propagation routines.
struct PropStats {
  std::size_t ggcp_rounds = 0;
  std::size_t learned = 0;  // insertions that grew span(L)
  PropStats& operator+=(const PropStats& o) {
    ggcp_rounds += o.ggcp_rounds;
    learned += o.learned;
    return *this;
  }
};

/// Unit clauses L give L+1 ∈ L; a clause L1 ∨ L2 gives the product
/// f*g with f = L1+1, g = L2+1 and edges (f+1, g), (g+1, f). The extended
/// variant adds the edges through f+g. InputError on clauses wider than 2.
Igs trivial_igs(const XnfFormula& f, bool extended = false);

/// Reduces every label modulo L, harvests forced linerals, and repeats until
/// L stops growing. The result is sigma-reduced and compact.
PropStats ggcp(Igs& g);

struct SccResult {
  std::vector<std::vector<Vertex>> components;  // each sorted by label
  std::vector<Lineral> learned;                 // f1 + fi per component
  bool parity_odd = false;
};
SccResult scc_condense(const Igs& g);

/// Alternates ggcp and SCC learning until the graph is acyclic.
PropStats cr_ggcp(Igs& g);

/// Kahn order, or nullopt when the graph has a cycle.
std::optional<std::vector<Vertex>> topological_order(const Igs& g);
std::vector<Vertex> sources(const Igs& g);

/// Vertices reachable from v (v included), in BFS order.
std::vector<Vertex> descendants(const Igs& g, Vertex v);

/// Labels of all trivially failed vertices; for each returned f, f+1 ∈ I_F.
/// ContractError when the graph has a cycle.
std::vector<Lineral> tfls(const Igs& g);

/// Descendant-space learning (plus optional edge extension) to fixpoint.
PropStats preprocess(Igs& g, bool edge_extension = false);

}  // namespace xnf
