#pragma once

#include <stdexcept>
#include <string>

namespace evostab {

// Base of every error the library throws on bad input or violated
// preconditions. Internal invariant failures use std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error("parse error in '" + field + "': " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidStrategy : public Error {
 public:
  using Error::Error;
};

class InfeasibleProportions : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The certified-grid ESS test could neither certify nor refute.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

class IntegrationDiverged : public Error {
 public:
  IntegrationDiverged(double last_valid_time)
      : Error("integration diverged after t=" + std::to_string(last_valid_time)),
        last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace evostab
