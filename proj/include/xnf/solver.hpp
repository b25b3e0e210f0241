#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xnf/formula.hpp"
#include "xnf/igs.hpp"

namespace xnf {

enum class Heuristic { MaxReach, MaxBottleneck, MaxPath };

std::string_view to_string(Heuristic h);
/// Accepts "maxreach", "maxbottleneck", "maxpath". InputError otherwise.
Heuristic parse_heuristic(std::string_view name);

/// Branching pair: every model of the current ideal satisfies all of l0
/// (as vanishing polynomials) or all of l1.
struct Decision {
  std::vector<Lineral> l0;
  std::vector<Lineral> l1;
};

/// Path counts with saturation at UINT64_MAX.
std::vector<std::uint64_t> paths_from(const Igs& g, const std::vector<Vertex>& topo);
std::vector<std::uint64_t> paths_to(const Igs& g, const std::vector<Vertex>& topo);

/// All three need an acyclic, sigma-reduced Igs with at least one edge
/// (ContractError otherwise). Ties go to the smallest label.
Decision decide_maxreach(const Igs& g);
Decision decide_maxbottleneck(const Igs& g);
Decision decide_maxpath(const Igs& g);
Decision decide(const Igs& g, Heuristic h);

/// The longest path chosen by decide_maxpath, as vertices.
std::vector<Vertex> longest_path(const Igs& g);

enum class Status { Sat, Unsat, Timeout };
std::string_view to_string(Status s);

struct SolverStats {
  std::size_t decisions = 0;
  std::size_t ggcp_rounds = 0;
  std::size_t learned_linerals = 0;
  std::size_t peak_depth = 0;
  double wall_time = 0.0;  // seconds
};

struct SolveResult {
  Status status = Status::Unsat;
  Assignment model;  // Sat only
  SolverStats stats;
};

struct SolverConfig {
  Heuristic heuristic = Heuristic::MaxBottleneck;
  bool extended_igs = false;
  bool preprocess = false;
  bool edge_extension = false;
  bool tfls = true;
  std::optional<double> timeout_seconds;
  /// Called with the propagated state before each branch.
  std::function<void(const Igs&, const Decision&)> on_decision;
};

/// Graph-based DPLL on a 2-XNF formula. A Sat model always satisfies f.
SolveResult dpll_solve(const XnfFormula& f, const SolverConfig& config = {});

}  // namespace xnf
