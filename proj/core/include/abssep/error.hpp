#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abssep {

enum class ErrorCode {
  LengthMismatch,
  NegativeEigenvalue,
  TraceError,
  InvalidDims,
  SymmetricDimsUnsupported,
  UnsupportedDims,
  KappaOutOfRange,
  PreconditionUnmet,
  AlphaZero,
  MaskInvalid,
  NotHermitian,
  IterationBudgetExhausted,
  DegenerateInput,
  SectorAmbiguous,
  DimensionTooLarge,
  DimsMismatch,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; `code()` is stable
// and is what the CLI maps to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::TraceError: return "TraceError";
    case ErrorCode::InvalidDims: return "InvalidDims";
    case ErrorCode::SymmetricDimsUnsupported: return "SymmetricDimsUnsupported";
    case ErrorCode::UnsupportedDims: return "UnsupportedDims";
    case ErrorCode::KappaOutOfRange: return "KappaOutOfRange";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::AlphaZero: return "AlphaZero";
    case ErrorCode::MaskInvalid: return "MaskInvalid";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IterationBudgetExhausted: return "IterationBudgetExhausted";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SectorAmbiguous: return "SectorAmbiguous";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimsMismatch: return "DimsMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace abssep
