#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eikograph {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph description (bad id, nonpositive length, self-loop, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The graph (or a requested subset of it) is not connected.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

/// A chord distance table violates the metric axioms.
class MetricError : public Error {
 public:
  using Error::Error;
};

/// A scalar field is missing values or has the wrong role/size.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// A Dirichlet problem is ill-posed (e.g. empty boundary).
class ProblemError : public Error {
 public:
  using Error::Error;
};

/// A graph query is meaningless at this vertex (e.g. isolated vertex).
class GraphError : public Error {
 public:
  using Error::Error;
};

class HamiltonianError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing for the implicit reduction hit its cap.
class CoercivityError : public HamiltonianError {
 public:
  using HamiltonianError::HamiltonianError;
};

/// Fixed-point iteration did not settle; carries the residual history.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

/// Unreadable or malformed input file; message carries line/field context.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace eikograph
