#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace helixlift {

enum class ErrorKind {
  OutOfDomain,
  UnsupportedOrder,
  InvalidArgument,
  ParseError,
  UnknownKind,
  InvalidField,
  ZeroSpeed,
  DegenerateFrame,
  StencilOutOfDomain,
  NotAHelix,
  NotUnitSpeed,
  ThetaMismatch,
  DomainMismatch,
  DegenerateDenominator,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::ZeroSpeed: return "ZeroSpeed";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::NotAHelix: return "NotAHelix";
    case ErrorKind::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorKind::ThetaMismatch: return "ThetaMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
  }
  return "Unknown";
}

/// True for failures caused by the geometry of a valid input (as opposed to a
/// malformed request).
constexpr bool is_geometric(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroSpeed:
    case ErrorKind::DegenerateFrame:
    case ErrorKind::StencilOutOfDomain:
    case ErrorKind::NotAHelix:
    case ErrorKind::NotUnitSpeed:
    case ErrorKind::DegenerateDenominator:
      return true;
    default:
      return false;
  }
}

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw GeometryError(kind, what); }

}  // namespace helixlift
