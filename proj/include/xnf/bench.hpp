#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xnf/formula.hpp"
#include "xnf/solver.hpp"

namespace xnf {

struct GenSpec {
  std::size_t n = 10;
  std::size_t m = 30;
  bool force_sat = false;
  std::uint64_t seed = 0;
  std::size_t width = 2;  // linerals per clause
};

struct GeneratedInstance {
  XnfFormula formula;
  std::optional<Assignment> planted;  // set iff force_sat
};

/// Clauses of `width` linerals, each uniform over the non-constant linerals
/// in n variables. With force_sat, a uniform point a is drawn first and every
/// clause false under a gets the constant of one random lineral flipped.
GeneratedInstance gen_random(const GenSpec& spec);

/// Uniform non-constant lineral in x_1..x_n.
template <class Rng>
Lineral random_lineral(std::size_t n, Rng& rng);

/// Exhaustive search in lexicographic order (x_1 most significant).
/// InputError when num_vars > 32.
SolveResult brute_force_solve(const XnfFormula& f);
std::uint64_t count_models(const XnfFormula& f);

/// Every model, in lexicographic order.
std::vector<Assignment> all_models(const XnfFormula& f);

struct BenchRow {
  std::string instance;
  Status status = Status::Unsat;
  double seconds = 0.0;
  std::size_t decisions = 0;
  std::size_t learned = 0;
  std::size_t depth = 0;
};

/// Solves each file (converting to 2-XNF when needed) on `threads` workers.
/// Rows come back sorted by instance name.
std::vector<BenchRow> run_bench(const std::vector<std::filesystem::path>& files, const SolverConfig& config,
                                std::size_t threads = 1);

/// `instance,status,seconds,decisions,learned,depth` with a header line.
std::string bench_csv(const std::vector<BenchRow>& rows);

template <class Rng>
Lineral random_lineral(std::size_t n, Rng& rng) {
  std::vector<Var> vars;
  while (vars.empty()) {
    for (std::size_t base = 0; base < n; base += 64) {
      std::uint64_t w = rng();
      const std::size_t bits = n - base < 64 ? n - base : 64;
      if (bits < 64) w &= (std::uint64_t{1} << bits) - 1;
      for (std::size_t b = 0; b < bits; ++b) {
        if ((w >> b) & 1) vars.push_back(static_cast<Var>(base + b + 1));
      }
    }
  }
  return Lineral::from_vars(vars, rng() & 1);
}

}  // namespace xnf
