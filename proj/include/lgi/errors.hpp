#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace lgi {

/// Base class of every error raised by the library.
///
/// A step index can be attached after the fact (see `integrate`), which
/// rewrites the message but keeps the dynamic type so callers can still
/// catch the specific category.
class Error : public std::exception {
 public:
  explicit Error(std::string msg) : msg_(std::move(msg)), base_(msg_) {}

  const char* what() const noexcept override { return msg_.c_str(); }

  void attach_step(std::size_t step) {
    step_ = step;
    msg_ = base_ + " (at step " + std::to_string(step) + ")";
  }
  std::optional<std::size_t> step() const { return step_; }

 private:
  std::string msg_;
  std::string base_;
  std::optional<std::size_t> step_;
};

/// Incompatible descriptors, manifold variants or violated preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or a singular linear solve.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Request outside the tabulated or implemented range.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Point outside the domain of a chart, retraction or logarithm.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// Malformed integration scheme (e.g. a stage referencing a later stage).
class SchemeError : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration failed to converge.
class SolverError : public Error {
 public:
  SolverError(std::string msg, double residual, int iterations)
      : Error(std::move(msg) + " (residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Vanishing gradient where a bivector normalisation needs it.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Unknown registry name or bad user input in the harness.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgi
