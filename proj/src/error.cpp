#include "hugperch/error.hpp"

namespace hugperch {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::HingeInsidePole: return "HingeInsidePole";
    case ErrorKind::GeometryInfeasible: return "GeometryInfeasible";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NegativeNormal: return "NegativeNormal";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::NoImpactFound: return "NoImpactFound";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hugperch
