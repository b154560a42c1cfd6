#ifndef IC4_ERRORS_HPP
#define IC4_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ic4 {

/// Malformed edge-list or spec text. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  auto line() const -> std::size_t { return line_; }

 private:
  std::size_t line_;
};

/// Invalid parameters or configuration (bad q, n over the limit, bad constants).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition of a routine was violated, or an internal consistency check failed.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ic4

#endif
