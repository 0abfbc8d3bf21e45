#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcube {

enum class ErrorCode {
  LengthMismatch,
  NonFiniteValue,
  DimensionTooLarge,
  DimensionMismatch,
  InvalidNoise,
  InvalidOrder,
  NegativeValue,
  ZeroFunction,
  ConstantFunction,
  RadiusOutOfRange,
  MassOverflow,
  DomainError,
  SlopeOutOfRange,
  TargetOutOfRange,
  EmptySet,
  FullCube,
  PointOutsideOmega,
  AnchorConstraintViolated,
  CaseMismatch,
  ParamOutOfRange,
  UnknownModel,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Raised for malformed inputs. A violated inequality is never an Error;
/// it is reported through CheckReport::pass.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidNoise: return "InvalidNoise";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::MassOverflow: return "MassOverflow";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SlopeOutOfRange: return "SlopeOutOfRange";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::FullCube: return "FullCube";
    case ErrorCode::PointOutsideOmega: return "PointOutsideOmega";
    case ErrorCode::AnchorConstraintViolated: return "AnchorConstraintViolated";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hcube
