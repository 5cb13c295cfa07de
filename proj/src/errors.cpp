#include "sraembed/errors.hpp"

#include <utility>

namespace sraembed {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CoordinateNotLipschitz: return "CoordinateNotLipschitz";
    case ErrorKind::ChartTooSmall: return "ChartTooSmall";
    case ErrorKind::ChartNotNoncontracting: return "ChartNotNoncontracting";
    case ErrorKind::ChartDistortionExceeded: return "ChartDistortionExceeded";
    case ErrorKind::ConfigNotSra: return "ConfigNotSra";
    case ErrorKind::ConfigWrongSize: return "ConfigWrongSize";
    case ErrorKind::NotSraFree: return "NotSraFree";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> witness,
             int level)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(message),
      witness_(std::move(witness)),
      level_(level) {}

} // namespace sraembed
