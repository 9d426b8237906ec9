#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lacs {

enum class ErrorCode {
  NonSquareImage,
  NonFinitePixel,
  DimensionMismatch,
  NonPowerOfTwoSize,
  InvalidLine,
  InvalidPdf,
  EtaOutOfRange,
  TooFewLinesPerRound,
  UnknownCase,
  InvalidConfig,
  AllZeroReference,
  GridTooLarge,
  SingularDesign,
  NotEnoughLines,
  EmptyMask,
  Diverged,
  ZeroReferenceEnergy,
  ZeroTruth,
  TumorOutOfBounds,
  UnsupportedFormat,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; the code is the
// machine-readable part, what() carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lacs
