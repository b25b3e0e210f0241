#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "xnf/anf.hpp"
#include "xnf/formula.hpp"

namespace xnf {

/// Reads `p xnf N M` (or `p cnf N M`) DIMACS-style text. Clauses are
/// lineral tokens terminated by `0` and may span lines; `x`-prefixed lines are
/// single-line XOR constraints and parse as unit clauses. Both count toward M.
/// Throws ParseError.
XnfFormula parse_xnf(std::string_view text);
XnfFormula read_xnf_file(const std::filesystem::path& path);

std::string write_xnf(const XnfFormula& f);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// One polynomial per line in the `x1*x2+x3+1` syntax; blank lines and
/// `#` comments are skipped. Throws ParseError.
std::vector<AnfPoly> parse_anf(std::string_view text);
std::string write_anf(const std::vector<AnfPoly>& polys);

/// CNF clauses and XOR constraints over DIMACS literals, kept in emission
/// order. An XOR entry asserts that the XOR of its literals is true.
struct CnfXor {
  struct Entry {
    bool is_xor = false;
    std::vector<int> lits;
  };
  std::size_t num_vars = 0;
  std::vector<Entry> entries;

  std::string to_dimacs() const;
};

/// Requires a 2-XNF formula (InputError otherwise). Unit linerals become XOR
/// lines; a non-literal lineral inside a two-lineral clause is replaced by a
/// fresh variable Y tied to it by `x -Y ... 0`. Fresh variables are numbered
/// after num_vars in clause order.
CnfXor to_cnfxor(const XnfFormula& f);
std::string export_cnfxor(const XnfFormula& f);

/// Pure CNF: XORs wider than `cutting` are chained through fresh variables,
/// and each piece is expanded into its 2^(k-1) clauses. Requires cutting >= 3.
CnfXor to_cnf(const XnfFormula& f, std::size_t cutting = 5);
std::string export_cnf(const XnfFormula& f, std::size_t cutting = 5);

}  // namespace xnf
