#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wdist {

enum class ErrorCode {
  // parameter / input validation
  NotPrime,
  EvenCharacteristic,
  ReduciblePolynomial,
  NotPrimitive,
  InvalidModulus,
  EvenS,
  NTooSmall,
  InvalidArgument,
  NotADivisor,
  DivisionByZero,
  InvalidForm,
  // resource limits
  TableLimitExceeded,
  MemoryCapExceeded,
  BudgetExceeded,
  // consistency failures; these indicate a bug or an identity that failed to hold
  NonDivisibleKernel,
  NonIntegralCount,
  NonRationalNorm,
  UnclassifiableCounts,
  ClassificationMismatch,
  NonIntegralFrequency,
  NegativeFrequency,
  MomentMismatch,
  DistributionMismatch,
  Internal,
};

std::string_view to_string(ErrorCode code);

enum class ErrorClass { Validation, Budget, Verification };

ErrorClass classify(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wdist
