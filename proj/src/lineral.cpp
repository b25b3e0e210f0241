#include "xnf/lineral.hpp"

#include <charconv>
#include <stdexcept>

#include "xnf/errors.hpp"

namespace xnf {

Lineral::Lineral(std::initializer_list<Var> vars, bool constant) : constant_(constant) {
  for (Var v : vars) toggle(v);
}

Lineral Lineral::variable(Var v) {
  Lineral l;
  l.toggle(v);
  return l;
}

Lineral Lineral::from_vars(std::span<const Var> vars, bool constant) {
  Lineral l;
  l.constant_ = constant;
  for (Var v : vars) l.toggle(v);
  return l;
}

bool Lineral::contains(Var v) const noexcept {
  if (v == 0) return false;
  const std::size_t bit = v - 1;
  const std::size_t w = bit / kWordBits;
  return w < words_.size() && ((words_[w] >> (bit % kWordBits)) & 1);
}

void Lineral::toggle(Var v) {
  if (v == 0) throw std::invalid_argument("variable index 0 is not valid");
  const std::size_t bit = v - 1;
  const std::size_t w = bit / kWordBits;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  const Word mask = Word{1} << (bit % kWordBits);
  words_[w] ^= mask;
  popcount_ = (words_[w] & mask) ? popcount_ + 1 : popcount_ - 1;
  trim();
}

Var Lineral::leading_var() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return static_cast<Var>(w * kWordBits + std::countr_zero(words_[w]) + 1);
  }
  return 0;
}

Var Lineral::max_var() const noexcept {
  if (words_.empty()) return 0;
  const std::size_t w = words_.size() - 1;
  return static_cast<Var>(w * kWordBits + (kWordBits - std::countl_zero(words_[w])));
}

std::vector<Var> Lineral::vars() const {
  std::vector<Var> out;
  out.reserve(popcount_);
  for_each_var([&](Var v) { out.push_back(v); });
  return out;
}

Lineral& Lineral::operator+=(const Lineral& o) {
  constant_ ^= o.constant_;
  if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
  std::size_t pc = 0;
  for (std::size_t w = 0; w < o.words_.size(); ++w) words_[w] ^= o.words_[w];
  for (Word x : words_) pc += std::popcount(x);
  popcount_ = pc;
  trim();
  return *this;
}

bool Lineral::eval(const Assignment& a) const {
  if (max_var() > a.size()) throw InputError("assignment shorter than lineral support");
  bool r = constant_;
  for_each_var([&](Var v) { r ^= a[v - 1]; });
  return r;
}

std::string Lineral::to_token() const {
  if (is_constant()) throw std::invalid_argument("constant lineral has no token form");
  std::string out;
  bool first = true;
  for_each_var([&](Var v) {
    if (!first) out += '+';
    if (first && constant_) out += '-';
    out += std::to_string(v);
    first = false;
  });
  return out;
}

std::string Lineral::to_poly_string() const {
  std::string out;
  for_each_var([&](Var v) {
    if (!out.empty()) out += '+';
    out += 'x';
    out += std::to_string(v);
  });
  if (constant_) out += out.empty() ? "1" : "+1";
  return out.empty() ? "0" : out;
}

Lineral Lineral::parse_token(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty lineral");
  Lineral l;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(token.find('+', pos), token.size());
    std::string_view lit = token.substr(pos, end - pos);
    if (!lit.empty() && lit.front() == '-') {
      l.flip_constant();
      lit.remove_prefix(1);
    }
    unsigned long v = 0;
    const auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
    if (lit.empty() || ec != std::errc{} || ptr != lit.data() + lit.size() || v == 0 ||
        v > 0xFFFFFFFFul) {
      throw std::invalid_argument("malformed literal '" + std::string(lit) + "' in lineral '" +
                                  std::string(token) + "'");
    }
    l.toggle(static_cast<Var>(v));
    if (end == token.size()) break;
    pos = end + 1;
  }
  return l;
}

bool Lineral::has_var_above(std::size_t bit) const noexcept {
  const std::size_t w = bit / kWordBits;
  if (w >= words_.size()) return false;
  const std::size_t b = bit % kWordBits;
  const Word above = b + 1 < kWordBits ? (words_[w] >> (b + 1)) : 0;
  if (above) return true;
  for (std::size_t i = w + 1; i < words_.size(); ++i) {
    if (words_[i]) return true;
  }
  return false;
}

std::strong_ordering operator<=>(const Lineral& a, const Lineral& b) noexcept {
  const std::size_t nw = std::max(a.words_.size(), b.words_.size());
  for (std::size_t w = 0; w < nw; ++w) {
    const Lineral::Word wa = w < a.words_.size() ? a.words_[w] : 0;
    const Lineral::Word wb = w < b.words_.size() ? b.words_[w] : 0;
    if (const Lineral::Word x = wa ^ wb) {
      const int bit = std::countr_zero(x);
      const std::size_t d = w * Lineral::kWordBits + bit;
      const bool a_has = (wa >> bit) & 1;
      // Past the shared prefix, the list holding d is smaller unless the other
      // list ends there.
      const Lineral& other = a_has ? b : a;
      const bool other_continues = other.has_var_above(d);
      if (a_has) return other_continues ? std::strong_ordering::less : std::strong_ordering::greater;
      return other_continues ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return a.constant_ <=> b.constant_;
}

std::size_t Lineral::hash() const noexcept {
  std::size_t h = constant_ ? 0x9e3779b97f4a7c15ull : 0;
  for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

void Lineral::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace xnf
