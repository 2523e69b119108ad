#include "homlab/error.hpp"

namespace homlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::DiagonalNotZero: return "DiagonalNotZero";
    case ErrorKind::OffDiagonalZero: return "OffDiagonalZero";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::PaletteNotStrictlyIncreasing: return "PaletteNotStrictlyIncreasing";
    case ErrorKind::InvalidPalette: return "InvalidPalette";
    case ErrorKind::ToleranceMergeAmbiguous: return "ToleranceMergeAmbiguous";
    case ErrorKind::EmptySpace: return "EmptySpace";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotPartialIsometry: return "NotPartialIsometry";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorKind::BasisSearchTooLarge: return "BasisSearchTooLarge";
    case ErrorKind::NoPalette: return "NoPalette";
    case ErrorKind::SumNotInjective: return "SumNotInjective";
    case ErrorKind::NormNotInjective: return "NormNotInjective";
    case ErrorKind::DistancesNotDistinct: return "DistancesNotDistinct";
    case ErrorKind::NotATriangle: return "NotATriangle";
    case ErrorKind::RainbowNotAbelian: return "RainbowNotAbelian";
    case ErrorKind::RainbowNotUniquelyTransitive: return "RainbowNotUniquelyTransitive";
    case ErrorKind::RainbowGNotInvolution: return "RainbowGNotInvolution";
    case ErrorKind::RainbowGDoesNotInvert: return "RainbowGDoesNotInvert";
    case ErrorKind::RainbowRNotInjective: return "RainbowRNotInjective";
    case ErrorKind::RainbowRNotPositive: return "RainbowRNotPositive";
    case ErrorKind::RainbowRHitsDistance: return "RainbowRHitsDistance";
    case ErrorKind::SchemeInvalid: return "SchemeInvalid";
    case ErrorKind::NotCoherent: return "NotCoherent";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

}  // namespace homlab
