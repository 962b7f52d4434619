#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pebcalc {

enum class Errc {
  CycleDetected,
  IndexOutOfRange,
  DuplicateEdge,
  MalformedLine,
  InvalidParam,
  IllegalMove,
  UnknownVertex,
  DoesNotTouchSink,
  DoesNotEndEmpty,
  GraphTooLarge,
  NoUniqueSink,
  FieldSpecInvalid,
  FieldMismatch,
  DegreeExceeded,
  NotARefutation,
  BadJustification,
  McMultViolation,
  LastLineNotOne,
  BackboneBroken,
  DeadPremise,
  LastConfigNot1,
  NotInputRefutation,
  WrongSystem,
  NotHorn,
  SinkNeverPebbled,
  DimensionCapExceeded,
  TooManyVariables,
  ParseError,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::InvalidParam: return "InvalidParam";
    case Errc::IllegalMove: return "IllegalMove";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::DoesNotTouchSink: return "DoesNotTouchSink";
    case Errc::DoesNotEndEmpty: return "DoesNotEndEmpty";
    case Errc::GraphTooLarge: return "GraphTooLarge";
    case Errc::NoUniqueSink: return "NoUniqueSink";
    case Errc::FieldSpecInvalid: return "FieldSpecInvalid";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DegreeExceeded: return "DegreeExceeded";
    case Errc::NotARefutation: return "NotARefutation";
    case Errc::BadJustification: return "BadJustification";
    case Errc::McMultViolation: return "McMultViolation";
    case Errc::LastLineNotOne: return "LastLineNotOne";
    case Errc::BackboneBroken: return "BackboneBroken";
    case Errc::DeadPremise: return "DeadPremise";
    case Errc::LastConfigNot1: return "LastConfigNot1";
    case Errc::NotInputRefutation: return "NotInputRefutation";
    case Errc::WrongSystem: return "WrongSystem";
    case Errc::NotHorn: return "NotHorn";
    case Errc::SinkNeverPebbled: return "SinkNeverPebbled";
    case Errc::DimensionCapExceeded: return "DimensionCapExceeded";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code and,
/// where it makes sense, the index of the offending line, step or move.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace pebcalc
