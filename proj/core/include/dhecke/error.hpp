#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dhecke {

enum class ErrorCode {
  NonInvertible,
  ZeroArgument,
  IncompatiblePrimes,
  InvalidPrime,
  RingMismatch,
  NotPositiveDefinite,
  UnsupportedDiscriminant,
  BadIndex,
  NotExactDivisor,
  PrimeDividesLevel,
  NotInSpan,
  TraceNotOldform,
  EisensteinRankNotOne,
  RamifiedPrime,
  NotTransposition,
  PrecisionExhausted,
  CacheCorrupt,
  Internal,
};

inline std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::IncompatiblePrimes: return "IncompatiblePrimes";
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::UnsupportedDiscriminant: return "UnsupportedDiscriminant";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotExactDivisor: return "NotExactDivisor";
    case ErrorCode::PrimeDividesLevel: return "PrimeDividesLevel";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::TraceNotOldform: return "TraceNotOldform";
    case ErrorCode::EisensteinRankNotOne: return "EisensteinRankNotOne";
    case ErrorCode::RamifiedPrime: return "RamifiedPrime";
    case ErrorCode::NotTransposition: return "NotTransposition";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace dhecke
