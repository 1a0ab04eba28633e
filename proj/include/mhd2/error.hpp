#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace mhd2 {

enum class ErrorCode {
  InvalidValue,
  UnknownKey,
  MissingRequired,
  HermitianViolation,
  DegenerateSpectrum,
  NonFiniteTendency,
  NonFiniteState,
  StepTooSmall,
  InsufficientSamples,
  NonPositiveValue,
  NonMonotoneTime,
  NotInClass,
  ZeroWavevector,
  GridTooLarge,
  GridMismatch,
  CorruptCheckpoint,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class CheckpointError : public Error {
 public:
  CheckpointError(const std::string& what, std::uint64_t offset)
      : Error(ErrorCode::CorruptCheckpoint, what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

namespace detail {
inline std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", t);
  return buf;
}
}  // namespace detail

/// Thrown by time stepping; remembers the last time at which the state was good.
class StepError : public Error {
 public:
  StepError(ErrorCode code, const std::string& what, double last_good_t)
      : Error(code, what + " (last good t = " + detail::format_time(last_good_t) + ")"),
        last_good_t_(last_good_t) {}

  double last_good_t() const noexcept { return last_good_t_; }

 private:
  double last_good_t_;
};

}  // namespace mhd2
