#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace beltrami {

enum class ErrorCode {
  ParseError,
  NonManifold,
  EmptyMesh,
  InvalidCount,
  InvalidAlpha,
  InvalidEpsilon,
  DimensionMismatch,
  ConvergenceFailure,
  DisconnectedMesh,
  ConstantFunction,
  RankDeficientRival,
  DegenerateSampling,
  AsymmetricInput,
  TooLarge,
  NegativeMu,
  InvalidArgument,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DisconnectedMesh: return "DisconnectedMesh";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::RankDeficientRival: return "RankDeficientRival";
    case ErrorCode::DegenerateSampling: return "DegenerateSampling";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NegativeMu: return "NegativeMu";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

// Numerical failures map to CLI exit code 2, everything else is an input error (exit 1).
inline bool is_numerical_failure(ErrorCode code) {
  return code == ErrorCode::ConvergenceFailure;
}

}  // namespace beltrami
