#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace occelm {

enum class ErrorCode {
  InvalidArgument,
  Io,
  ParseError,
  RaggedRows,
  EmptyFile,
  UnknownLabelToken,
  TooFewSamples,
  DimensionMismatch,
  MissingLabels,
  NoTargets,
  NoOutliers,
  SingularSystem,
  RankDeficient,
  TooFewInitialSamples,
  Thr3NotApplicable,
  EmptyErrors,
  AlreadyFinalized,
  NotFinalized,
  AllPointsIdentical,
  LengthMismatch,
  EmptyRuns,
  NotTwoDimensional,
  ModelFormat,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
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
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::UnknownLabelToken: return "UnknownLabelToken";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::NoTargets: return "NoTargets";
    case ErrorCode::NoOutliers: return "NoOutliers";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewInitialSamples: return "TooFewInitialSamples";
    case ErrorCode::Thr3NotApplicable: return "Thr3NotApplicable";
    case ErrorCode::EmptyErrors: return "EmptyErrors";
    case ErrorCode::AlreadyFinalized: return "AlreadyFinalized";
    case ErrorCode::NotFinalized: return "NotFinalized";
    case ErrorCode::AllPointsIdentical: return "AllPointsIdentical";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyRuns: return "EmptyRuns";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::ModelFormat: return "ModelFormat";
  }
  return "Unknown";
}

}  // namespace occelm
