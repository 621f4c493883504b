#pragma once

#include <stdexcept>
#include <string>

namespace dmu {

enum class ErrorKind {
  ParseError,
  InvariantViolation,
  BoundaryTooClose,
  OrderTooLarge,
  IllConditioned,
  EmptySupport,
  InvalidArcLength,
  InvalidWeight,
  PreconditionFailed,
  MajorantViolated,
  AdmissibilityFailed,
  FitFailed,
  KappaBounded,
  UndefinedBoundaryValue,
  NonIntegrableLog,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::InvalidArcLength: return "InvalidArcLength";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::MajorantViolated: return "MajorantViolated";
    case ErrorKind::AdmissibilityFailed: return "AdmissibilityFailed";
    case ErrorKind::FitFailed: return "FitFailed";
    case ErrorKind::KappaBounded: return "KappaBounded";
    case ErrorKind::UndefinedBoundaryValue: return "UndefinedBoundaryValue";
    case ErrorKind::NonIntegrableLog: return "NonIntegrableLog";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace dmu
