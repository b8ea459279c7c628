#ifndef PPFA_ERRORS_HPP
#define PPFA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ppfa {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A variable name was registered twice.
struct FreshnessError : Error {
  explicit FreshnessError(const std::string& msg) : Error(msg) {}
};

/// Polynomial evaluation hit an unassigned variable.
struct EvalError : Error {
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// Syntax error in a probability expression, automaton file or process file.
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// A structural precondition was violated (bad operand, inconsistent path, ...).
struct StructureError : Error {
  explicit StructureError(const std::string& msg) : Error(msg) {}
};

/// A probability term leaves [0,1] on the validation grid.
struct RangeError : Error {
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

}  // namespace ppfa

#endif
