#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocasync {

// Malformed user input: files, formula strings, arguments out of range.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in the OCA DSL or in a formula. Line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::string message, int line, int column,
             std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// A computation would exceed a configured resource limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A level-set iteration hit its step cap before reaching a decision.
class StepCapExceeded : public std::runtime_error {
 public:
  StepCapExceeded(std::string message, std::size_t horizon)
      : std::runtime_error(std::move(message)), horizon_(horizon) {}
  std::size_t horizon() const { return horizon_; }

 private:
  std::size_t horizon_;
};

// An internal consistency check failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ocasync
