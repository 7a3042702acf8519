#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace markoff {

enum class ErrorCode {
  ModulusMismatch,
  DivisionByZero,
  NotPrime,
  InvalidArgument,
  SyntaxError,
  IUnavailable,
  NotSolution,
  AllConstant,
  IsFundamental,
  NotFundamental,
  UnclassifiableInput,
  ConstantFormNeedsConstantA,
  BudgetExceeded,
  NotOnUnitTree,
  NotEuclidSum,
  NonConstantA,
  ConstantANotSupported,
  Overflow,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IUnavailable: return "IUnavailable";
    case ErrorCode::NotSolution: return "NotSolution";
    case ErrorCode::AllConstant: return "AllConstant";
    case ErrorCode::IsFundamental: return "IsFundamental";
    case ErrorCode::NotFundamental: return "NotFundamental";
    case ErrorCode::UnclassifiableInput: return "UnclassifiableInput";
    case ErrorCode::ConstantFormNeedsConstantA: return "ConstantFormNeedsConstantA";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotOnUnitTree: return "NotOnUnitTree";
    case ErrorCode::NotEuclidSum: return "NotEuclidSum";
    case ErrorCode::NonConstantA: return "NonConstantA";
    case ErrorCode::ConstantANotSupported: return "ConstantANotSupported";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure; position is a 0-based character offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace markoff
