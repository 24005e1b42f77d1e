#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projgrp {

enum class ErrorCode {
  InvalidArgument,
  InversionOfZero,
  IndexOutOfRange,
  NotPrime,
  NotOddPrime,
  InvalidFieldSpec,
  ReduciblePolynomial,
  NotABijection,
  WrongLength,
  ParseError,
  OverlappingCycles,
  UnknownPoint,
  DomainMismatch,
  NonUnitDeterminant,
  ZeroScaling,
  OrderOverflow,
  GroupTooLargeForEnumeration,
  SeedNotInGroup,
  PrimeDoesNotDivideOrder,
  FieldTooLarge,
  FieldTooSmall,
  NotNormal,
  OnlyScalars,
  DecompositionFails,
  NoTwistExponent,
  NoUniqueLambda,
  SpecialCaseContradiction,
  HypothesesFail,
  BadVariant,
  PTooLarge,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace projgrp
