#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hugperch {

enum class ErrorKind {
  HingeInsidePole,
  GeometryInfeasible,
  NoBracket,
  NegativeNormal,
  DomainError,
  TooShort,
  NoImpactFound,
  Empty,
  Parse,
  Validation,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Every failure the library raises carries a kind so
/// callers (sweeps, batch analysis) can record it per item and continue.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hugperch
