#include "projgrp/error.hpp"

namespace projgrp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InversionOfZero: return "InversionOfZero";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::InvalidFieldSpec: return "InvalidFieldSpec";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::WrongLength: return "WrongLength";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OverlappingCycles: return "OverlappingCycles";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorCode::ZeroScaling: return "ZeroScaling";
    case ErrorCode::OrderOverflow: return "OrderOverflow";
    case ErrorCode::GroupTooLargeForEnumeration: return "GroupTooLargeForEnumeration";
    case ErrorCode::SeedNotInGroup: return "SeedNotInGroup";
    case ErrorCode::PrimeDoesNotDivideOrder: return "PrimeDoesNotDivideOrder";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::OnlyScalars: return "OnlyScalars";
    case ErrorCode::DecompositionFails: return "DecompositionFails";
    case ErrorCode::NoTwistExponent: return "NoTwistExponent";
    case ErrorCode::NoUniqueLambda: return "NoUniqueLambda";
    case ErrorCode::SpecialCaseContradiction: return "SpecialCaseContradiction";
    case ErrorCode::HypothesesFail: return "HypothesesFail";
    case ErrorCode::BadVariant: return "BadVariant";
    case ErrorCode::PTooLarge: return "PTooLarge";
  }
  return "Unknown";
}

}  // namespace projgrp
