#include "xnf/anf.hpp"

#include <algorithm>
#include <iterator>

#include "xnf/errors.hpp"

namespace xnf {

AnfPoly::AnfPoly(std::vector<Monomial> terms) {
  for (auto& t : terms) toggle(std::move(t));
}

AnfPoly AnfPoly::from_lineral(const Lineral& l) {
  AnfPoly p;
  l.for_each_var([&](Var v) { p.terms_.insert(Monomial{v}); });
  if (l.constant()) p.terms_.insert(Monomial{});
  return p;
}

AnfPoly AnfPoly::product(const Lineral& a, const Lineral& b) {
  AnfPoly p;
  auto va = a.vars();
  auto vb = b.vars();
  if (a.constant()) va.push_back(0);
  if (b.constant()) vb.push_back(0);
  for (Var x : va) {
    for (Var y : vb) {
      Monomial m;
      if (x) m.push_back(x);
      if (y) m.push_back(y);
      p.toggle(std::move(m));
    }
  }
  return p;
}

void AnfPoly::toggle(Monomial m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  if (!m.empty() && m.front() == 0) throw InputError("variable index 0 is not valid");
  auto [it, inserted] = terms_.insert(std::move(m));
  if (!inserted) terms_.erase(it);
}

AnfPoly& AnfPoly::operator+=(const AnfPoly& o) {
  for (const auto& t : o.terms_) {
    auto [it, inserted] = terms_.insert(t);
    if (!inserted) terms_.erase(it);
  }
  return *this;
}

AnfPoly operator*(const AnfPoly& a, const AnfPoly& b) {
  AnfPoly p;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Monomial m;
      std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(m));
      p.toggle(std::move(m));
    }
  }
  return p;
}

Var AnfPoly::max_var() const {
  Var m = 0;
  for (const auto& t : terms_) {
    if (!t.empty()) m = std::max(m, t.back());
  }
  return m;
}

bool AnfPoly::eval(const Assignment& a) const {
  bool r = false;
  for (const auto& t : terms_) {
    bool v = true;
    for (Var x : t) {
      if (x > a.size()) throw InputError("assignment shorter than polynomial support");
      if (!a[x - 1]) {
        v = false;
        break;
      }
    }
    r ^= v;
  }
  return r;
}

Lineral AnfPoly::to_lineral() const {
  Lineral l;
  for (const auto& t : terms_) {
    if (t.size() > 1) throw InputError("polynomial " + to_string() + " is not linear");
    if (t.empty()) {
      l.flip_constant();
    } else {
      l.toggle(t.front());
    }
  }
  return l;
}

std::string AnfPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '+';
    if (t.empty()) {
      out += '1';
      continue;
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += '*';
      out += 'x';
      out += std::to_string(t[i]);
    }
  }
  return out;
}

}  // namespace xnf
