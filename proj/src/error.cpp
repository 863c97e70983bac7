#include "gwplasma/error.hpp"

namespace gwplasma {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::ProbabilitySumNotOne: return "ProbabilitySumNotOne";
    case ErrorKind::ZeroChildrenForbidden: return "ZeroChildrenForbidden";
    case ErrorKind::DegenerateLaw: return "DegenerateLaw";
    case ErrorKind::DuplicateSupport: return "DuplicateSupport";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NegativeBetaUnsupported: return "NegativeBetaUnsupported";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::UnsupportedExactCost: return "UnsupportedExactCost";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace gwplasma
