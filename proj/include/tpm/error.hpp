#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tpm {

enum class ErrorKind {
  InvalidArgs,
  DimensionMismatch,
  EmptyDecomposition,
  CapExceeded,
  NotUnitNorm,
  NotEquiangular,
  NotSymmetric,
  ZeroImage,
  ZeroEigenvalue,
  NotAnEigenvector,
  PreconditionFailed,
  NotETF,
  OddOrder,
  NoConvergence,
  DegenerateForm,
  Io,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgs: return "InvalidArgs";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyDecomposition: return "EmptyDecomposition";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotUnitNorm: return "NotUnitNorm";
    case ErrorKind::NotEquiangular: return "NotEquiangular";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ZeroImage: return "ZeroImage";
    case ErrorKind::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorKind::NotAnEigenvector: return "NotAnEigenvector";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotETF: return "NotETF";
    case ErrorKind::OddOrder: return "OddOrder";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Numeric failures (as opposed to bad input) map to exit code 2 in the CLI.
constexpr bool is_numeric_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::DegenerateForm:
    case ErrorKind::ZeroImage:
    case ErrorKind::ZeroEigenvalue:
    case ErrorKind::NotAnEigenvector:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace tpm
