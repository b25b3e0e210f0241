#include "xnf/formats.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "xnf/errors.hpp"

namespace xnf {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "' in header");
  }
  return v;
}

Lineral parse_lineral(std::string_view tok, std::size_t line, std::size_t num_vars) {
  Lineral l;
  try {
    l = Lineral::parse_token(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
  if (l.max_var() > num_vars) {
    throw ParseError(line, "variable " + std::to_string(l.max_var()) + " out of range (header says " +
                               std::to_string(num_vars) + ")");
  }
  return l;
}

void require_nonconstant(const Lineral& l, std::string_view tok, std::size_t line) {
  if (l.is_constant()) throw ParseError(line, "lineral '" + std::string(tok) + "' is constant");
}

}  // namespace

XnfFormula parse_xnf(std::string_view text) {
  XnfFormula f;
  std::optional<std::size_t> declared;
  XnfClause pending;
  std::size_t pending_line = 0;
  std::size_t header_line = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == 'c' || line.front() == '%') {
      if (eol == text.size()) break;
      continue;
    }

    if (line.front() == 'p') {
      if (declared) throw ParseError(line_no, "duplicate header");
      const auto toks = split_ws(line);
      if (toks.size() != 4 || toks[0] != "p" || (toks[1] != "xnf" && toks[1] != "cnf")) {
        throw ParseError(line_no, "expected 'p xnf <vars> <clauses>'");
      }
      f.num_vars = parse_count(toks[2], line_no, "variable count");
      declared = parse_count(toks[3], line_no, "clause count");
      header_line = line_no;
    } else if (!declared) {
      throw ParseError(line_no, "clause before header");
    } else if (line.front() == 'x') {
      if (!pending.empty()) throw ParseError(line_no, "XOR line inside an unterminated clause");
      line.remove_prefix(1);
      const auto toks = split_ws(line);
      if (toks.empty() || toks.back() != "0") throw ParseError(line_no, "XOR line missing terminating 0");
      Lineral sum;
      for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i] == "0") throw ParseError(line_no, "stray 0 inside XOR line");
        sum += parse_lineral(toks[i], line_no, f.num_vars);
      }
      require_nonconstant(sum, line, line_no);
      f.clauses.push_back({std::move(sum)});
    } else {
      for (auto tok : split_ws(line)) {
        if (tok == "0") {
          f.clauses.push_back(std::move(pending));
          pending.clear();
          continue;
        }
        if (pending.empty()) pending_line = line_no;
        Lineral l = parse_lineral(tok, line_no, f.num_vars);
        require_nonconstant(l, tok, line_no);
        pending.push_back(std::move(l));
      }
    }
    if (eol == text.size()) break;
  }

  if (!declared) throw ParseError(0, "missing 'p xnf' header");
  if (!pending.empty()) throw ParseError(pending_line, "clause missing terminating 0");
  if (f.clauses.size() != *declared) {
    throw ParseError(header_line, "header declares " + std::to_string(*declared) + " clauses, found " +
                                  std::to_string(f.clauses.size()));
  }
  return f;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

XnfFormula read_xnf_file(const std::filesystem::path& path) { return parse_xnf(read_text_file(path)); }

std::string write_xnf(const XnfFormula& f) {
  std::string out = "p xnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto& c : f.clauses) {
    for (const auto& l : c) {
      out += l.to_token();
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

std::vector<AnfPoly> parse_anf(std::string_view text) {
  std::vector<AnfPoly> polys;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    raw = trim(raw.substr(0, raw.find('#')));
    if (!raw.empty()) {
      std::string line;
      for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) line += ch;
      }
      AnfPoly p;
      std::string_view rest = line;
      while (true) {
        const std::size_t plus = std::min(rest.find('+'), rest.size());
        const std::string_view term = rest.substr(0, plus);
        if (term.empty()) throw ParseError(line_no, "empty term");
        if (term == "1") {
          p.toggle({});
        } else if (term != "0") {
          Monomial m;
          std::string_view fs = term;
          while (true) {
            const std::size_t star = std::min(fs.find('*'), fs.size());
            const std::string_view fac = fs.substr(0, star);
            Var v = 0;
            if (fac.size() < 2 || (fac[0] != 'x' && fac[0] != 'X')) {
              throw ParseError(line_no, "unknown token '" + std::string(fac) + "'");
            }
            const auto [ptr, ec] = std::from_chars(fac.data() + 1, fac.data() + fac.size(), v);
            if (ec != std::errc{} || ptr != fac.data() + fac.size() || v == 0) {
              throw ParseError(line_no, "unknown token '" + std::string(fac) + "'");
            }
            m.push_back(v);
            if (star == fs.size()) break;
            fs.remove_prefix(star + 1);
          }
          p.toggle(std::move(m));
        }
        if (plus == rest.size()) break;
        rest.remove_prefix(plus + 1);
      }
      polys.push_back(std::move(p));
    }
    if (eol == text.size()) break;
  }
  return polys;
}

std::string write_anf(const std::vector<AnfPoly>& polys) {
  std::string out;
  for (const auto& p : polys) {
    out += p.to_string();
    out += '\n';
  }
  return out;
}

std::string CnfXor::to_dimacs() const {
  std::string out = "p cnf " + std::to_string(num_vars) + " " + std::to_string(entries.size()) + "\n";
  for (const auto& e : entries) {
    if (e.is_xor) out += "x ";
    for (int lit : e.lits) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

namespace {

// DIMACS literals for "lineral is true", negation on the first variable.
std::vector<int> xor_lits(const Lineral& l) {
  std::vector<int> lits;
  l.for_each_var([&](Var v) { lits.push_back(static_cast<int>(v)); });
  if (l.constant() && !lits.empty()) lits.front() = -lits.front();
  return lits;
}

}  // namespace

CnfXor to_cnfxor(const XnfFormula& f) {
  CnfXor out;
  std::size_t next = f.num_vars;
  for (const auto& c : f.clauses) {
    if (c.size() > 2) throw InputError("CNF-XOR export needs 2-XNF; found a clause with " +
                                       std::to_string(c.size()) + " linerals");
    if (c.size() == 1) {
      out.entries.push_back({true, xor_lits(c[0])});
      continue;
    }
    CnfXor::Entry clause{false, {}};
    std::vector<CnfXor::Entry> ties;
    for (const auto& l : c) {
      if (l.size() == 1) {
        const int v = static_cast<int>(l.leading_var());
        clause.lits.push_back(l.constant() ? -v : v);
        continue;
      }
      const int y = static_cast<int>(++next);
      clause.lits.push_back(y);
      // Y <-> L, written as ¬Y ⊕ L; an odd number of negations lands on Y.
      CnfXor::Entry tie{true, {l.constant() ? y : -y}};
      l.for_each_var([&](Var v) { tie.lits.push_back(static_cast<int>(v)); });
      ties.push_back(std::move(tie));
    }
    out.entries.push_back(std::move(clause));
    for (auto& t : ties) out.entries.push_back(std::move(t));
  }
  out.num_vars = next;
  return out;
}

std::string export_cnfxor(const XnfFormula& f) { return to_cnfxor(f).to_dimacs(); }

CnfXor to_cnf(const XnfFormula& f, std::size_t cutting) {
  if (cutting < 3) throw InputError("cutting number must be at least 3");
  CnfXor src = to_cnfxor(f);
  CnfXor out;
  std::size_t next = src.num_vars;

  auto expand = [&](const std::vector<int>& vars, bool parity) {
    const std::size_t k = vars.size();
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << k); ++b) {
      if (static_cast<bool>(std::popcount(b) & 1) == parity) continue;
      CnfXor::Entry e;
      for (std::size_t i = 0; i < k; ++i) e.lits.push_back((b >> i) & 1 ? -vars[i] : vars[i]);
      out.entries.push_back(std::move(e));
    }
  };

  for (auto& e : src.entries) {
    if (!e.is_xor) {
      out.entries.push_back(std::move(e));
      continue;
    }
    std::vector<int> vars;
    bool parity = true;
    for (int lit : e.lits) {
      vars.push_back(lit < 0 ? -lit : lit);
      if (lit < 0) parity = !parity;
    }
    while (vars.size() > cutting) {
      const int t = static_cast<int>(++next);
      std::vector<int> head(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(cutting - 1));
      head.push_back(t);
      expand(head, false);
      std::vector<int> tail{t};
      tail.insert(tail.end(), vars.begin() + static_cast<std::ptrdiff_t>(cutting - 1), vars.end());
      vars = std::move(tail);
    }
    expand(vars, parity);
  }
  out.num_vars = next;
  return out;
}

std::string export_cnf(const XnfFormula& f, std::size_t cutting) { return to_cnf(f, cutting).to_dimacs(); }

}  // namespace xnf
