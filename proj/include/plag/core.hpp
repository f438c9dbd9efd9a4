#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace plag {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector or matrix did not have the expected shape.
class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, Index expected, Index actual)
      : Error(what + ": expected length " + std::to_string(expected) +
              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  Index expected() const { return expected_; }
  Index actual() const { return actual_; }

 private:
  Index expected_;
  Index actual_;
};

/// An evaluator produced a non-finite value or threw.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter value (e.g. beta outside (0,1)).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Carries the 1-based line number (0 if
/// the error is not tied to a line).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline void require_size(const Vector& v, Index expected,
                         const std::string& what) {
  if (v.size() != expected) throw DimensionError(what, expected, v.size());
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace plag
