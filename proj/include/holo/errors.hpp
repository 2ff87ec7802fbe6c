#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holo {

enum class ErrorKind {
  NotNested,
  NotComplementary,
  DegenerateComplement,
  IdenticallySingular,
  UnsupportedPoleOrder,
  WrongOrder,
  OutOfRange,
  SingularOnContour,
  AssumptionViolated,
  NotSingularAtOne,
  TailNotConverged,
  InsufficientHistory,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotNested: return "NotNested";
    case ErrorKind::NotComplementary: return "NotComplementary";
    case ErrorKind::DegenerateComplement: return "DegenerateComplement";
    case ErrorKind::IdenticallySingular: return "IdenticallySingular";
    case ErrorKind::UnsupportedPoleOrder: return "UnsupportedPoleOrder";
    case ErrorKind::WrongOrder: return "WrongOrder";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SingularOnContour: return "SingularOnContour";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::NotSingularAtOne: return "NotSingularAtOne";
    case ErrorKind::TailNotConverged: return "TailNotConverged";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace holo
