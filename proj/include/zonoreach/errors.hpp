#pragma once

#include <stdexcept>
#include <string>

namespace zonoreach {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

// Raised by boundary extraction when rank(G) < n; the zonotope is then its own boundary.
class NotFullDimensional : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Interval evaluation hit a division by an interval containing zero or a sqrt of negatives.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EnclosureFailure : public Error {
 public:
  using Error::Error;
};

class ContractionCollapse : public Error {
 public:
  using Error::Error;
};

}  // namespace zonoreach
