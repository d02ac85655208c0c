#pragma once

#include <stdexcept>
#include <string>

namespace arcipm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function, derivative or linear solve produced a non-finite or
/// inaccurate value.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what, int coordinate = -1)
      : Error(what), coordinate_{coordinate} {}

  /// Coordinate index that triggered the failure, or -1 when not applicable.
  int coordinate() const { return coordinate_; }

 private:
  int coordinate_;
};

/// The KKT matrix has a pivot below the singularity threshold.
class SingularKkt : public Error {
 public:
  SingularKkt(const std::string& what, double cond_estimate)
      : Error(what), cond_estimate_{cond_estimate} {}

  double cond_estimate() const { return cond_estimate_; }

 private:
  double cond_estimate_;
};

/// Backtracking exhausted without finding an acceptable step angle.
class StepFailure : public Error {
 public:
  using Error::Error;
};

class UnknownProblem : public Error {
 public:
  using Error::Error;
};

class InvalidArguments : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace arcipm
