#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace listacc {

enum class ErrorCode {
  ElementNotInList,
  DuplicateElement,
  EmptyList,
  EmptySequence,
  PositionOutOfRange,
  MissingCounters,
  SequenceShorterThanList,
  InconsistentSpec,
  ClassTooLarge,
  NonPositiveSize,
  NoType3Exists,
  ImpossibleBaseCost,
  NotBlockExpansion,
  InvalidClassString,
  InvalidInput,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ElementNotInList: return "ElementNotInList";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::MissingCounters: return "MissingCounters";
    case ErrorCode::SequenceShorterThanList: return "SequenceShorterThanList";
    case ErrorCode::InconsistentSpec: return "InconsistentSpec";
    case ErrorCode::ClassTooLarge: return "ClassTooLarge";
    case ErrorCode::NonPositiveSize: return "NonPositiveSize";
    case ErrorCode::NoType3Exists: return "NoType3Exists";
    case ErrorCode::ImpossibleBaseCost: return "ImpossibleBaseCost";
    case ErrorCode::NotBlockExpansion: return "NotBlockExpansion";
    case ErrorCode::InvalidClassString: return "InvalidClassString";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Single exception type for the library. `index()` carries the offending
/// request index for ElementNotInList raised while serving, or the count
/// bound for ClassTooLarge.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace listacc
