#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xnf/bench.hpp"
#include "xnf/cli.hpp"
#include "xnf/converter.hpp"
#include "xnf/errors.hpp"
#include "xnf/formats.hpp"
#include "xnf/solver.hpp"

namespace py = pybind11;
using namespace xnf;

namespace {

py::dict stats_dict(const SolverStats& s) {
  py::dict d;
  d["decisions"] = s.decisions;
  d["ggcp_rounds"] = s.ggcp_rounds;
  d["learned_linerals"] = s.learned_linerals;
  d["peak_depth"] = s.peak_depth;
  d["wall_time"] = s.wall_time;
  return d;
}

py::object model_or_none(const SolveResult& r) {
  if (r.status != Status::Sat) return py::none();
  return py::cast(std::vector<bool>(r.model.begin(), r.model.end()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "2-XNF solving and conversion";

  auto parse_error = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);
  (void)parse_error;

  py::class_<Lineral>(m, "Lineral")
      .def(py::init([](const std::vector<Var>& vars, bool constant) { return Lineral::from_vars(vars, constant); }),
           py::arg("vars"), py::arg("constant") = false)
      .def_static("parse", [](const std::string& tok) { return Lineral::parse_token(tok); })
      .def_property_readonly("vars", &Lineral::vars)
      .def_property_readonly("constant", &Lineral::constant)
      .def("plus_one", &Lineral::plus_one)
      .def("eval", [](const Lineral& l, const std::vector<bool>& a) { return l.eval(Assignment(a.begin(), a.end())); })
      .def("token", &Lineral::to_token)
      .def("__add__", [](const Lineral& a, const Lineral& b) { return a + b; })
      .def("__eq__", [](const Lineral& a, const Lineral& b) { return a == b; })
      .def("__lt__", [](const Lineral& a, const Lineral& b) { return a < b; })
      .def("__hash__", &Lineral::hash)
      .def("__str__", &Lineral::to_poly_string)
      .def("__repr__", [](const Lineral& l) { return "Lineral('" + l.to_token() + "')"; });

  py::class_<XnfFormula>(m, "Formula")
      .def(py::init<>())
      .def(py::init([](std::size_t n, std::vector<XnfClause> clauses) {
             return XnfFormula{n, std::move(clauses)};
           }),
           py::arg("num_vars"), py::arg("clauses"))
      .def_readwrite("num_vars", &XnfFormula::num_vars)
      .def_readwrite("clauses", &XnfFormula::clauses)
      .def("is_2xnf", &XnfFormula::is_2xnf)
      .def("max_var", &XnfFormula::max_var)
      .def("__eq__", [](const XnfFormula& a, const XnfFormula& b) { return a == b; })
      .def("__str__", [](const XnfFormula& f) { return write_xnf(f); });

  m.def("parse_xnf", [](const std::string& text) { return parse_xnf(text); });
  m.def("read_xnf", [](const std::string& path) { return read_xnf_file(path); });
  m.def("write_xnf", &write_xnf);
  m.def("export_cnfxor", &export_cnfxor);
  m.def("export_cnf", &export_cnf, py::arg("formula"), py::arg("cutting") = 5);
  m.def("to_2xnf", &xnf_to_2xnf, "Split every clause wider than two linerals");
  m.def(
      "anf_to_2xnf",
      [](const std::string& text, bool share) {
        const auto polys = parse_anf(text);
        std::size_t n = 0;
        for (const auto& p : polys) n = std::max<std::size_t>(n, p.max_var());
        return system_to_2xnf(polys, n, share).to_formula();
      },
      py::arg("text"), py::arg("share") = false);

  m.def("verify_model", [](const XnfFormula& f, const std::vector<bool>& a) {
    return verify_model(f, Assignment(a.begin(), a.end()));
  });

  m.def(
      "solve",
      [](const XnfFormula& f, const std::string& heuristic, bool preprocess, bool edge_extension, bool extended_igs,
         bool tfls, std::optional<double> timeout) {
        SolverConfig cfg;
        cfg.heuristic = parse_heuristic(heuristic);
        cfg.preprocess = preprocess || edge_extension;
        cfg.edge_extension = edge_extension;
        cfg.extended_igs = extended_igs;
        cfg.tfls = tfls;
        cfg.timeout_seconds = timeout;
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = dpll_solve(f.is_2xnf() ? f : xnf_to_2xnf(f), cfg);
        }
        if (r.status == Status::Sat) r.model.resize(f.num_vars);
        return py::make_tuple(std::string(to_string(r.status)), model_or_none(r), stats_dict(r.stats));
      },
      py::arg("formula"), py::arg("heuristic") = "maxbottleneck", py::arg("preprocess") = false,
      py::arg("edge_extension") = false, py::arg("extended_igs") = false, py::arg("tfls") = true,
      py::arg("timeout") = py::none(),
      "Returns (status, model or None, stats). Status is SATISFIABLE, UNSATISFIABLE or UNKNOWN.");

  m.def("brute_force", [](const XnfFormula& f) {
    const SolveResult r = brute_force_solve(f);
    return py::make_tuple(std::string(to_string(r.status)), model_or_none(r));
  });
  m.def("count_models", &count_models);

  m.def(
      "gen_random",
      [](std::size_t n, std::size_t m_, bool force_sat, std::uint64_t seed) {
        const auto inst = gen_random({n, m_, force_sat, seed});
        py::object planted = py::none();
        if (inst.planted) planted = py::cast(std::vector<bool>(inst.planted->begin(), inst.planted->end()));
        return py::make_tuple(inst.formula, planted);
      },
      py::arg("n"), py::arg("m"), py::arg("force_sat") = false, py::arg("seed") = 0);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
