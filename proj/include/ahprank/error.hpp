#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ahprank {

/// Every failure the library reports carries one of these codes.
enum class Errc {
  NonSquare,
  NegativeEntry,
  InvalidEntry,
  ReciprocityViolation,
  OneSidedComparison,
  BadDiagonal,
  TooSmall,
  ParseError,
  FileNotFound,
  Disconnected,
  CycleExplosion,
  NotEligible,
  Infeasible,
  MaxIterations,
  NoConvergence,
  SingularSystem,
  NonPositiveWeights,
  InfeasibleDensity,
  InvalidArgument,
  Internal,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Error raised for a specific (row, column) position: a matrix pair or a text location.
class PositionedError : public Error {
 public:
  PositionedError(Errc code, int first, int second, const std::string& detail)
      : Error(code, detail), first_(first), second_(second) {}

  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

 private:
  int first_;
  int second_;
};

}  // namespace ahprank
