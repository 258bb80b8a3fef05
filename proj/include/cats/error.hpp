#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cats {

enum class ErrorCode {
  InvalidArgument,
  BadExtent,
  TooFewNodes,
  GridMismatch,
  DegenerateDenominator,
  InadmissibleEquilibrium,
  NegativeBlowup,
  NonFiniteState,
  KindMismatch,
  NegativeField,
  MissingSamples,
  TooFewSamples,
  AllBelowFloor,
  AbortedTrajectory,
  MissingKey,
  BadValue,
  UnknownKey,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cats
