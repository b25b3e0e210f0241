#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xnf {

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A well-formed value that violates an operation's precondition
/// (e.g. a 3-lineral clause handed to a 2-XNF routine).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal contract violated by the caller (e.g. tfls on a cyclic graph).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace xnf
