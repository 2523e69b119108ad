#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homlab {

enum class ErrorKind {
  // space-core
  AsymmetricMatrix,
  DiagonalNotZero,
  OffDiagonalZero,
  TriangleViolation,
  PaletteNotStrictlyIncreasing,
  InvalidPalette,
  ToleranceMergeAmbiguous,
  EmptySpace,
  // permgroup
  OrderCapExceeded,
  DegreeTooLarge,
  DegreeMismatch,
  NotTransitive,
  // homogeneity / structure
  NotPartialIsometry,
  NotHomogeneous,
  PreconditionFailed,
  NotPowerOfTwo,
  BasisSearchTooLarge,
  // constructions
  NoPalette,
  SumNotInjective,
  NormNotInjective,
  DistancesNotDistinct,
  NotATriangle,
  RainbowNotAbelian,
  RainbowNotUniquelyTransitive,
  RainbowGNotInvolution,
  RainbowGDoesNotInvert,
  RainbowRNotInjective,
  RainbowRNotPositive,
  RainbowRHitsDistance,
  // amalgamation
  SchemeInvalid,
  NotCoherent,
  // io
  ParseError,
  InternalInvariantViolation,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every homlab operation. The kind names the violated
// precondition; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace homlab
