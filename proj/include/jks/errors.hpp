#pragma once

#include "jks/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace jks {

enum class ErrorKind {
  ZeroDenominator,
  SingularBasis,
  BadConstantTerm,
  HasLoop,
  HasOrientedCycle,
  Disconnected,
  UnknownVertex,
  NotNormalized,
  NonRegularStability,
  DegenerateRCharges,
  NotSumRegular,
  NotATree,
  BadCutoff,
  CutoffTooSmall,
  ParseError,
  ValidationError,
  InvalidInput,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// A stability vector lying on a wall. `span` lists the vectors whose span contains `point`;
// `labels` names them (arrow names, tree ids, ...).
struct WallWitness {
  std::string context;
  std::vector<Rational> point;
  std::vector<std::vector<Rational>> span;
  std::vector<std::string> labels;
};

class NonRegularStabilityError : public Error {
 public:
  NonRegularStabilityError(const std::string& message, WallWitness witness)
      : Error(ErrorKind::NonRegularStability, message), witness_(std::move(witness)) {}
  const WallWitness& witness() const noexcept { return witness_; }

 private:
  WallWitness witness_;
};

}  // namespace jks
