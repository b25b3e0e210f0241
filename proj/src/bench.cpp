#include "xnf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "xnf/converter.hpp"
#include "xnf/errors.hpp"
#include "xnf/formats.hpp"

namespace xnf {

GeneratedInstance gen_random(const GenSpec& spec) {
  if (spec.n == 0) throw InputError("gen_random needs n >= 1");
  std::mt19937_64 rng(spec.seed);
  GeneratedInstance out;
  out.formula.num_vars = spec.n;

  Assignment a;
  if (spec.force_sat) {
    a.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) a[i] = rng() & 1;
  }
  out.formula.clauses.reserve(spec.m);
  for (std::size_t c = 0; c < spec.m; ++c) {
    XnfClause clause;
    for (std::size_t j = 0; j < spec.width; ++j) clause.push_back(random_lineral(spec.n, rng));
    if (spec.force_sat && !clause.empty() && !clause_satisfied(clause, a)) {
      clause[rng() % clause.size()].flip_constant();
    }
    out.formula.clauses.push_back(std::move(clause));
  }
  if (spec.force_sat) out.planted = std::move(a);
  return out;
}

namespace {

// Enumerates F_2^n in lexicographic order, keeping every lineral's value up
// to date as the counter ticks. Bit b of the counter is x_{n-b}.
class Enumerator {
 public:
  explicit Enumerator(const XnfFormula& f) : n_(f.num_vars) {
    if (n_ > 32) throw InputError("brute force is capped at 32 variables");
    if (f.max_var() > n_) throw InputError("formula mentions variables beyond its header");
    occ_.resize(n_ + 1);
    for (const auto& clause : f.clauses) {
      if (clause.empty()) empty_clause_ = true;
      const std::size_t ci = true_count_.size();
      true_count_.push_back(0);
      for (const auto& l : clause) {
        const std::size_t li = value_.size();
        value_.push_back(l.constant());
        clause_of_.push_back(ci);
        if (l.constant()) ++true_count_[ci];
        l.for_each_var([&](Var v) { occ_[v].push_back(li); });
      }
      if (true_count_[ci] == 0) ++unsat_;
    }
  }

  bool satisfied() const { return !empty_clause_ && unsat_ == 0; }

  // Advances to the next point; false after the last one.
  bool next() {
    for (std::size_t b = 0; b < n_; ++b) {
      const Var v = static_cast<Var>(n_ - b);
      flip(v);
      if ((counter_ >> b) & 1) {
        counter_ &= ~(std::uint64_t{1} << b);
      } else {
        counter_ |= std::uint64_t{1} << b;
        return true;
      }
    }
    return false;
  }

  Assignment point() const {
    Assignment a(n_);
    for (std::size_t b = 0; b < n_; ++b) a[n_ - 1 - b] = (counter_ >> b) & 1;
    return a;
  }

 private:
  void flip(Var v) {
    for (std::size_t li : occ_[v]) {
      const std::size_t ci = clause_of_[li];
      if (value_[li]) {
        value_[li] = false;
        if (--true_count_[ci] == 0) ++unsat_;
      } else {
        value_[li] = true;
        if (true_count_[ci]++ == 0) --unsat_;
      }
    }
  }

  std::size_t n_;
  std::uint64_t counter_ = 0;
  std::vector<std::vector<std::size_t>> occ_;
  std::vector<bool> value_;
  std::vector<std::size_t> clause_of_;
  std::vector<std::size_t> true_count_;
  std::size_t unsat_ = 0;
  bool empty_clause_ = false;
};

}  // namespace

SolveResult brute_force_solve(const XnfFormula& f) {
  const auto start = std::chrono::steady_clock::now();
  Enumerator e(f);
  SolveResult res;
  do {
    if (e.satisfied()) {
      res.status = Status::Sat;
      res.model = e.point();
      break;
    }
  } while (e.next());
  res.stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::uint64_t count_models(const XnfFormula& f) {
  Enumerator e(f);
  std::uint64_t count = 0;
  do {
    count += e.satisfied();
  } while (e.next());
  return count;
}

std::vector<Assignment> all_models(const XnfFormula& f) {
  Enumerator e(f);
  std::vector<Assignment> out;
  do {
    if (e.satisfied()) out.push_back(e.point());
  } while (e.next());
  return out;
}

std::vector<BenchRow> run_bench(const std::vector<std::filesystem::path>& files, const SolverConfig& config,
                                std::size_t threads) {
  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) try {
      XnfFormula f = read_xnf_file(files[i]);
      if (!f.is_2xnf()) f = xnf_to_2xnf(f);
      SolverConfig cfg = config;
      cfg.on_decision = nullptr;
      const SolveResult r = dpll_solve(f, cfg);
      rows[i] = {files[i].filename().string(), r.status,           r.stats.wall_time,
                 r.stats.decisions,             r.stats.learned_linerals, r.stats.peak_depth};
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!err) err = std::current_exception();
      next = files.size();
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(files.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (err) std::rethrow_exception(err);
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) { return a.instance < b.instance; });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "instance,status,seconds,decisions,learned,depth\n";
  for (const auto& r : rows) {
    const char* s = r.status == Status::Sat ? "SAT" : r.status == Status::Unsat ? "UNSAT" : "TIMEOUT";
    os << r.instance << ',' << s << ',' << r.seconds << ',' << r.decisions << ',' << r.learned << ',' << r.depth
       << '\n';
  }
  return os.str();
}

}  // namespace xnf
