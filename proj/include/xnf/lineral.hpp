#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace xnf {

/// Variable index, 1-based.
using Var = std::uint32_t;

/// Point of F_2^n; entry i-1 holds the value of x_i.
using Assignment = std::vector<bool>;

/// A linear Boolean polynomial c + x_{i_1} + ... + x_{i_t}.
///
/// The support is a packed bit-vector (bit v-1 <-> x_v) kept trimmed so that
/// equal polynomials have equal representations. The same object doubles as
/// the logical lineral c XOR X_{i_1} XOR ... XOR X_{i_t}: `eval` returns the
/// same bit in both readings.
class Lineral {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Lineral() = default;
  Lineral(std::initializer_list<Var> vars, bool constant = false);
  Lineral(const Lineral&) = default;
  Lineral& operator=(const Lineral&) = default;
  // A moved-from lineral is the zero polynomial.
  Lineral(Lineral&& o) noexcept
      : words_(std::move(o.words_)),
        popcount_(std::exchange(o.popcount_, 0)),
        constant_(std::exchange(o.constant_, false)) {
    o.words_.clear();
  }
  Lineral& operator=(Lineral&& o) noexcept {
    words_ = std::move(o.words_);
    o.words_.clear();
    popcount_ = std::exchange(o.popcount_, 0);
    constant_ = std::exchange(o.constant_, false);
    return *this;
  }

  static Lineral zero() { return {}; }
  static Lineral one() {
    Lineral l;
    l.constant_ = true;
    return l;
  }
  static Lineral variable(Var v);
  static Lineral from_vars(std::span<const Var> vars, bool constant = false);

  bool constant() const noexcept { return constant_; }
  void set_constant(bool c) noexcept { constant_ = c; }
  void flip_constant() noexcept { constant_ = !constant_; }
  Lineral plus_one() const {
    Lineral r(*this);
    r.constant_ = !r.constant_;
    return r;
  }

  bool is_zero() const noexcept { return !constant_ && words_.empty(); }
  bool is_one() const noexcept { return constant_ && words_.empty(); }
  bool is_constant() const noexcept { return words_.empty(); }

  /// Number of variables in the support.
  std::size_t size() const noexcept { return popcount_; }

  bool contains(Var v) const noexcept;
  void toggle(Var v);

  /// Smallest variable in the support, 0 for constants. This is the leading
  /// term under the fixed ordering x_1 > x_2 > ... > x_n > 1.
  Var leading_var() const noexcept;
  /// Largest variable in the support, 0 for constants.
  Var max_var() const noexcept;

  std::vector<Var> vars() const;

  template <class Fn>
  void for_each_var(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        fn(static_cast<Var>(w * kWordBits + b + 1));
        bits &= bits - 1;
      }
    }
  }

  Lineral& operator+=(const Lineral& o);
  friend Lineral operator+(Lineral a, const Lineral& b) {
    a += b;
    return a;
  }

  bool eval(const Assignment& a) const;
  /// Evaluation for n <= 64 with the assignment packed as bit v-1 <-> x_v.
  bool eval_mask(Word mask) const noexcept {
    const Word w = words_.empty() ? 0 : words_[0];
    return constant_ ^ (std::popcount(w & mask) & 1);
  }

  std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }

  /// XNF token form: variables ascending joined by '+', the negation (constant
  /// bit) carried by a '-' on the first variable. Constants have no token
  /// form and throw std::invalid_argument.
  std::string to_token() const;
  /// Algebraic form, e.g. "x1+x3+1".
  std::string to_poly_string() const;

  /// Parses one XNF lineral token such as "-1+2+4"; every '-' flips the
  /// constant. Throws std::invalid_argument on malformed input.
  static Lineral parse_token(std::string_view token);

  friend bool operator==(const Lineral& a, const Lineral& b) noexcept {
    return a.constant_ == b.constant_ && a.words_ == b.words_;
  }
  /// Lexicographic on the ascending variable lists (a proper prefix sorts
  /// first), then by constant. Used for all deterministic tie-breaking.
  friend std::strong_ordering operator<=>(const Lineral& a, const Lineral& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  bool has_var_above(std::size_t bit) const noexcept;
  void trim() noexcept;

  // Up to 128 variables stay inline.
  boost::container::small_vector<Word, 2> words_;
  std::size_t popcount_ = 0;
  bool constant_ = false;
};

}  // namespace xnf

template <>
struct std::hash<xnf::Lineral> {
  std::size_t operator()(const xnf::Lineral& l) const noexcept { return l.hash(); }
};
