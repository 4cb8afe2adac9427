#pragma once

#include <stdexcept>
#include <string>

namespace tcw {

// Stable error codes. The CLI and the C API report these by name, so the
// enumerator spelling is part of the output contract.
enum class ErrorCode {
  InvalidPrime,
  DivisionByZero,
  CharMismatch,
  RingMismatch,
  ExponentOverflow,
  NotZeroDimensional,
  ZeroRing,
  GradingError,
  SingularEverywhere,
  EmptyFamily,
  ZeroCertificate,
  CertificateKilled,
  MapError,
  NotCofinite,
  NotNested,
  NotMonomial,
  DegenerateJacobian,
  ParameterError,
  NotComputed,
  DegreeTooSmall,
  BudgetExceeded,
  ParseError,
  NameClash,
  UnresolvedName,
  InternalError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::CharMismatch: return "CharMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorCode::ZeroRing: return "ZeroRing";
    case ErrorCode::GradingError: return "GradingError";
    case ErrorCode::SingularEverywhere: return "SingularEverywhere";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::ZeroCertificate: return "ZeroCertificate";
    case ErrorCode::CertificateKilled: return "CertificateKilled";
    case ErrorCode::MapError: return "MapError";
    case ErrorCode::NotCofinite: return "NotCofinite";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::ParameterError: return "ParameterError";
    case ErrorCode::NotComputed: return "NotComputed";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace tcw
