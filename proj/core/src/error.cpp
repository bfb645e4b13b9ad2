#include "wdist/error.hpp"

namespace wdist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::EvenS: return "EvenS";
    case ErrorCode::NTooSmall: return "NTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidForm: return "InvalidForm";
    case ErrorCode::TableLimitExceeded: return "TableLimitExceeded";
    case ErrorCode::MemoryCapExceeded: return "MemoryCapExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NonDivisibleKernel: return "NonDivisibleKernel";
    case ErrorCode::NonIntegralCount: return "NonIntegralCount";
    case ErrorCode::NonRationalNorm: return "NonRationalNorm";
    case ErrorCode::UnclassifiableCounts: return "UnclassifiableCounts";
    case ErrorCode::ClassificationMismatch: return "ClassificationMismatch";
    case ErrorCode::NonIntegralFrequency: return "NonIntegralFrequency";
    case ErrorCode::NegativeFrequency: return "NegativeFrequency";
    case ErrorCode::MomentMismatch: return "MomentMismatch";
    case ErrorCode::DistributionMismatch: return "DistributionMismatch";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::EvenCharacteristic:
    case ErrorCode::ReduciblePolynomial:
    case ErrorCode::NotPrimitive:
    case ErrorCode::InvalidModulus:
    case ErrorCode::EvenS:
    case ErrorCode::NTooSmall:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotADivisor:
    case ErrorCode::DivisionByZero:
    case ErrorCode::InvalidForm:
      return ErrorClass::Validation;
    case ErrorCode::TableLimitExceeded:
    case ErrorCode::MemoryCapExceeded:
    case ErrorCode::BudgetExceeded:
      return ErrorClass::Budget;
    default:
      return ErrorClass::Verification;
  }
}

}  // namespace wdist
