#pragma once

#include <stdexcept>
#include <string>

namespace multiflow {

enum class ErrorKind {
  InvalidInput,
  TooLarge,
  NonIntegral,
  NoSuchDemand,
  OddSetSize,
  Disconnected,
  Violated,
  NotSeriesParallel,
  NotTwoConnected,
  CrossingDemand,
  BothDeficitsPositive,
  NotApplicable,
  InternalError,
  NotK2mShape,
  NotBipartite,
  NotRing,
  NotEulerian,
  NotFullyCompliant,
  NotCompliant,
  NoPath,
  DegenerateLengths,
  MissingCoverage,
  PreconditionFailed,
  NotACover,
  UncoveredDemand,
  NotFractionallyRoutable,
  EmbeddingMismatch,
  NotSingleFace,
  OddM,
  NonPositiveC,
  ResourceCap,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace multiflow
