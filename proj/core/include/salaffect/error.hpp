#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace salaffect {

enum class ErrorCode {
  // core
  OutOfRangeIntensity,
  DimensionMismatch,
  InvalidArgument,
  // ingest
  IoError,
  UnsupportedFormat,
  CorruptImage,
  MissingColumn,
  MalformedRow,
  NonBinaryPresence,
  ScoreOutOfRange,
  BadManifest,
  TargetRateExceedsNative,
  EmptyTrial,
  // saliency backend
  ImageTooSmall,
  // stats
  LengthMismatch,
  DegenerateInput,
  TooFewSamples,
  RankDeficient,
  TooFewObservations,
  AllZeroWeights,
  KTooLarge,
  AllColumnsConstant,
  // report
  TooFewTrials,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI, the report assembler) can map it without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace salaffect
