#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glcoh {

// Typed failures. Everything that reaches the CLI boundary maps to an exit
// code there: usage/parse problems give 64, computational refusals give 1.

struct ModulusMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotASubmodule : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotASubgroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotNormal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotReductionKernel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ValuesNotFixed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Closure or solver would exceed its configured size budget.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OrderOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  std::size_t line;
  std::size_t column;
  ParseError(const std::string& what, std::size_t line_, std::size_t column_)
      : std::runtime_error(what), line(line_), column(column_) {}
};

// A verify id that is not in the check registry (usage error at the CLI).
struct UnknownCheck : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace glcoh
