#pragma once

#include <stdexcept>
#include <string>

namespace itb {

// Base class for all library failures. what() is a one-line diagnostic that
// names the offending field or control knob.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidEnsemble : public Error {
 public:
  using Error::Error;
};

class InvalidPattern : public Error {
 public:
  using Error::Error;
};

// Quadrature could not reach abs_tol within max_refinements.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, double achieved)
      : Error(msg), achieved_error(achieved) {}
  double achieved_error;
};

// Series tail_tol unreachable within max_terms.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& msg, double achieved)
      : Error(msg), achieved_tail(achieved) {}
  double achieved_tail;
};

class NoThresholdError : public Error {
 public:
  using Error::Error;
};

class MonotonicityError : public Error {
 public:
  using Error::Error;
};

class UnboundedRequirementError : public Error {
 public:
  using Error::Error;
};

}  // namespace itb
