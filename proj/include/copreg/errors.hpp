#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace copreg {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument left the admissible domain (e.g. u outside [0,1]).
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Sample too small / constant where variation is required.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

// Duplicated coordinate values under TiePolicy::error. Carries the
// 1-based row numbers of all tied entries so callers can name them.
class TiesPresent : public Error {
 public:
  TiesPresent(std::string message, char axis, std::vector<std::size_t> rows)
      : Error(std::move(message)), axis_(axis), rows_(std::move(rows)) {}

  char axis() const { return axis_; }
  const std::vector<std::size_t>& rows() const { return rows_; }

 private:
  char axis_;
  std::vector<std::size_t> rows_;
};

// A grid that was supposed to be a (sub)copula has a negative rectangle
// volume beyond tolerance.
class NotTwoIncreasing : public Error {
 public:
  using Error::Error;
};

// Distance/maximum requested over an empty point set.
class EmptyPointSet : public Error {
 public:
  using Error::Error;
};

// Moment matching for the scaled-Beta response is impossible, i.e. the
// cap c is too small for the requested conditional mean/variance.
class InfeasibleMoments : public Error {
 public:
  using Error::Error;
};

// Malformed input that is not covered by a more specific class
// (CSV/JSON/config parse problems, bad enum strings, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace copreg
