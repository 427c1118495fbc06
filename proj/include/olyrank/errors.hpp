#ifndef OLYRANK_ERRORS_HPP
#define OLYRANK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace olyrank {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (results file, roster, custom scale).
/// `line` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A tournament or matrix violating a structural invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// The comparison graph is not connected; the weight vector is not unique.
class DisconnectedGraphError : public Error {
public:
  explicit DisconnectedGraphError(std::vector<std::vector<std::size_t>> components)
      : Error("comparison graph is disconnected (" + std::to_string(components.size()) +
              " components)"),
        components_(std::move(components)) {}

  const std::vector<std::vector<std::size_t>>& components() const noexcept { return components_; }

private:
  std::vector<std::vector<std::size_t>> components_;
};

/// Input too small or otherwise degenerate for the requested computation.
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

/// An iterative solver stopped at its iteration cap.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (achieved residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Invalid run configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace olyrank

#endif  // OLYRANK_ERRORS_HPP
