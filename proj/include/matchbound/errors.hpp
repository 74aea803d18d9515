#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace matchbound {

// Domain-level failure: infeasible instance, malformed input, guard violation.
// The CLI maps these to exit code 1; usage mistakes exit 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text that does not match one of the documented file formats.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A search exceeded its node budget. Carries what was seen before the stop.
class BudgetError : public Error {
 public:
  BudgetError(std::uint64_t nodes_visited, std::uint64_t limit)
      : Error("budget exhausted: " + std::to_string(nodes_visited) +
              " nodes visited (limit " + std::to_string(limit) + ")"),
        nodes_(nodes_visited),
        limit_(limit) {}
  std::uint64_t nodes_visited() const { return nodes_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t nodes_;
  std::uint64_t limit_;
};

}  // namespace matchbound
