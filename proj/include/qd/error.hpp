#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qd {

/// Failure categories raised by the library. Every throwing operation uses
/// qd::Error carrying one of these.
enum class Errc {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  RankDeficient,
  NotAFrame,
  InvalidSpec,
  NotSorted,
  FanPallViolated,
  InterlacingViolated,
  RankTooLow,
  InvalidP,
  NoParsevalDual,
  NotParseval,
  InvalidModel,
  WrongExcess,
  HypothesisNotMet,
  InvalidSpectralData,
  ParseError,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotAFrame: return "NotAFrame";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::NotSorted: return "NotSorted";
    case Errc::FanPallViolated: return "FanPallViolated";
    case Errc::InterlacingViolated: return "InterlacingViolated";
    case Errc::RankTooLow: return "RankTooLow";
    case Errc::InvalidP: return "InvalidP";
    case Errc::NoParsevalDual: return "NoParsevalDual";
    case Errc::NotParseval: return "NotParseval";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::WrongExcess: return "WrongExcess";
    case Errc::HypothesisNotMet: return "HypothesisNotMet";
    case Errc::InvalidSpectralData: return "InvalidSpectralData";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qd
