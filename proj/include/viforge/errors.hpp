#pragma once

#include <stdexcept>
#include <string>

namespace viforge {

// Malformed input: out-of-range vertices, self-loops, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural precondition of a restricted algorithm does not hold
// (e.g. the vertex integrity bound of a polynomial special case).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An exhaustive oracle refused an instance larger than its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace viforge
