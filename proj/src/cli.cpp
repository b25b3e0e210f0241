#include "xnf/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "xnf/bench.hpp"
#include "xnf/converter.hpp"
#include "xnf/errors.hpp"
#include "xnf/formats.hpp"
#include "xnf/solver.hpp"

namespace xnf {

namespace {

constexpr int kSat = 10;
constexpr int kUnsat = 20;
constexpr int kUsage = 1;
constexpr int kBadInput = 2;

struct SolveOpts {
  std::string heuristic = "maxbottleneck";
  bool no_tfls = false;
  bool preprocess = false;
  bool edge_ext = false;
  bool extended = false;
  double timeout = 0;

  void add_to(CLI::App* app) {
    app->add_option("--heuristic", heuristic, "maxreach | maxbottleneck | maxpath")
        ->check(CLI::IsMember({"maxreach", "maxbottleneck", "maxpath"}));
    app->add_flag("--no-tfls", no_tfls, "Disable trivially-failed-lineral search");
    app->add_flag("--preprocess", preprocess, "Run descendant-space preprocessing");
    app->add_flag("--edge-ext", edge_ext, "Add edge extension to preprocessing");
    app->add_flag("--extended-igs", extended, "Start from the extended trivial IGS");
    app->add_option("--timeout", timeout, "Time budget in seconds (0 = none)")->check(CLI::NonNegativeNumber);
  }

  SolverConfig config() const {
    SolverConfig c;
    c.heuristic = parse_heuristic(heuristic);
    c.tfls = !no_tfls;
    c.preprocess = preprocess || edge_ext;
    c.edge_extension = edge_ext;
    c.extended_igs = extended;
    if (timeout > 0) c.timeout_seconds = timeout;
    return c;
  }
};

void print_model(std::ostream& out, const Assignment& a) {
  out << 'v';
  for (std::size_t i = 0; i < a.size(); ++i) out << ' ' << (a[i] ? "" : "-") << i + 1;
  out << " 0\n";
}

void print_stats(std::ostream& out, const SolverStats& s) {
  out << "c decisions " << s.decisions << '\n'
      << "c learned_linerals " << s.learned_linerals << '\n'
      << "c ggcp_rounds " << s.ggcp_rounds << '\n'
      << "c peak_depth " << s.peak_depth << '\n'
      << "c wall_time " << s.wall_time << '\n';
}

int report(std::ostream& out, const SolveResult& r) {
  out << "s " << to_string(r.status) << '\n';
  if (r.status == Status::Sat) print_model(out, r.model);
  print_stats(out, r.stats);
  return r.status == Status::Sat ? kSat : r.status == Status::Unsat ? kUnsat : 0;
}

// Literals from a model file: `v`/`s`/`c` lines are allowed, 0 ends a line.
Assignment read_model(const std::string& text, std::size_t n) {
  Assignment a(n, false);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::string tok;
    if (!(toks >> tok) || tok == "c" || tok == "s") continue;
    if (tok == "v" && !(toks >> tok)) continue;
    do {
      long lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("bad literal '" + tok + "' in model");
      }
      if (lit == 0) continue;
      const auto v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (v > n) throw InputError("model literal " + tok + " exceeds the variable count");
      a[v - 1] = lit > 0;
    } while (toks >> tok);
  }
  return a;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"2-XNF SAT solving, conversion and benchmarking", "xnfsat"};
  app.require_subcommand(1);

  std::string in, output, map_out, dot_out, model_file, format = "cnfxor";
  SolveOpts sopts;
  bool verify = false, as_anf = false, as_xnf = false, share = false, sat = false, count = false;
  std::size_t budget = SubstitutionSearch{}.budget, cutting = 5, n = 0, m = 0, threads = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* solve = app.add_subcommand("solve", "Solve an XNF instance");
  solve->add_option("file", in, "XNF input")->required();
  sopts.add_to(solve);
  solve->add_flag("--verify", verify, "Re-check SAT models before reporting");
  solve->add_option("--dot", dot_out, "Write the initial implication graph as DOT");

  auto* convert = app.add_subcommand("convert", "Convert ANF or XNF to 2-XNF");
  convert->add_option("input", in, "Input file")->required();
  auto* anf_flag = convert->add_flag("--anf", as_anf, "Input is an ANF system");
  convert->add_flag("--xnf", as_xnf, "Input is an XNF formula")->excludes(anf_flag);
  convert->add_option("-o", output, "Output 2-XNF file")->required();
  convert->add_option("--budget", budget, "Random combinations per substitution search");
  convert->add_option("--seed", seed, "Seed for the substitution search")->each([&](const std::string&) {
    seed_given = true;
  });
  convert->add_option("--map", map_out, "Write the substitution map");
  convert->add_flag("--share", share, "Add linear relations among substituted products");

  auto* exp = app.add_subcommand("export", "Export XNF as CNF-XOR or CNF");
  exp->add_option("input", in, "XNF input")->required();
  exp->add_option("--format", format, "cnfxor | cnf")->check(CLI::IsMember({"cnfxor", "cnf"}));
  exp->add_option("--cutting", cutting, "Cutting number for XOR splitting")->check(CLI::Range(3, 64));
  exp->add_option("-o", output, "Output file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a random 2-XNF instance");
  gen->add_option("-n", n, "Variables")->required()->check(CLI::PositiveNumber);
  gen->add_option("-m", m, "Clauses")->required();
  gen->add_flag("--sat", sat, "Plant a model");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("-o", output, "Output file")->required();

  auto* check = app.add_subcommand("check", "Check a model against a formula");
  check->add_option("file", in, "XNF input")->required();
  check->add_option("model", model_file, "Model file (DIMACS literals)")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force solve (at most 32 variables)");
  oracle->add_option("file", in, "XNF input")->required();
  oracle->add_flag("--count", count, "Count all models");

  auto* bench = app.add_subcommand("bench", "Solve every .xnf file in a directory, emit CSV");
  bench->add_option("dir", in, "Instance directory")->required()->check(CLI::ExistingDirectory);
  sopts.add_to(bench);
  bench->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("-o", output, "CSV output (stdout when absent)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "xnfsat: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  try {
    if (solve->parsed()) {
      const XnfFormula f = read_xnf_file(in);
      const XnfFormula g = f.is_2xnf() ? f : xnf_to_2xnf(f);
      const SolverConfig cfg = sopts.config();
      if (!dot_out.empty()) {
        Igs igs = trivial_igs(g, cfg.extended_igs);
        if (cfg.preprocess) preprocess(igs, cfg.edge_extension);
        write_text_file(dot_out, igs.to_dot());
      }
      SolveResult r = dpll_solve(g, cfg);
      if (r.status == Status::Sat) {
        r.model.resize(f.num_vars);  // drop helper variables
        if (verify && !verify_model(f, r.model)) {
          err << "xnfsat: model failed verification\n";
          return kBadInput;
        }
      }
      return report(out, r);
    }
    if (convert->parsed()) {
      const bool anf = as_anf || (!as_xnf && std::filesystem::path(in).extension() == ".anf");
      if (anf) {
        const auto polys = parse_anf(read_text_file(in));
        std::size_t nv = 0;
        for (const auto& p : polys) nv = std::max<std::size_t>(nv, p.max_var());
        SubstitutionSearch search;
        search.budget = budget;
        if (seed_given) search.seed = seed;
        const Representation rep = system_to_2xnf(polys, nv, share, search);
        write_text_file(output, write_xnf(rep.to_formula()));
        if (!map_out.empty()) write_text_file(map_out, write_substitution_map(rep.quad));
        out << "c base_vars " << nv << "\nc fresh_vars " << rep.quad.fresh_vars << '\n';
      } else {
        const XnfFormula f = read_xnf_file(in);
        const XnfFormula g = xnf_to_2xnf(f);
        write_text_file(output, write_xnf(g));
        out << "c base_vars " << f.num_vars << "\nc fresh_vars " << g.num_vars - f.num_vars << '\n';
      }
      return 0;
    }
    if (exp->parsed()) {
      const XnfFormula f = read_xnf_file(in);
      write_text_file(output, format == "cnf" ? export_cnf(f, cutting) : export_cnfxor(f));
      return 0;
    }
    if (gen->parsed()) {
      const auto inst = gen_random({n, m, sat, seed});
      write_text_file(output, write_xnf(inst.formula));
      return 0;
    }
    if (check->parsed()) {
      const XnfFormula f = read_xnf_file(in);
      const Assignment a = read_model(read_text_file(model_file), f.num_vars);
      const bool ok = verify_model(f, a);
      out << (ok ? "s MODEL_OK\n" : "s MODEL_FAILS\n");
      return ok ? kSat : kUnsat;
    }
    if (oracle->parsed()) {
      const XnfFormula f = read_xnf_file(in);
      if (count) {
        const std::uint64_t c = count_models(f);
        out << "c models " << c << '\n';
        return c ? kSat : kUnsat;
      }
      const SolveResult r = brute_force_solve(f);
      out << "s " << to_string(r.status) << '\n';
      if (r.status == Status::Sat) print_model(out, r.model);
      return r.status == Status::Sat ? kSat : kUnsat;
    }
    if (bench->parsed()) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".xnf") files.push_back(e.path());
      }
      const std::string csv = bench_csv(run_bench(files, sopts.config(), threads));
      if (output.empty()) {
        out << csv;
      } else {
        write_text_file(output, csv);
      }
      return 0;
    }
  } catch (const ParseError& e) {
    err << "xnfsat: " << in << ": " << e.what() << '\n';
    return kBadInput;
  } catch (const InputError& e) {
    err << "xnfsat: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "xnfsat: " << e.what() << '\n';
    return kBadInput;
  }
  return kUsage;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace xnf
