#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sraembed {

enum class ErrorKind {
    NotSquare,
    NonFinite,
    NotSymmetric,
    NegativeDistance,
    NonzeroDiagonal,
    TriangleViolation,
    DuplicatePoint,
    InvalidArgument,
    CoordinateNotLipschitz,
    ChartTooSmall,
    ChartNotNoncontracting,
    ChartDistortionExceeded,
    ConfigNotSra,
    ConfigWrongSize,
    NotSraFree,
    DegenerateDomain,
    InvalidSpec,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library. `witness()` holds the point indices
// (or, for CoordinateNotLipschitz, the pair followed by the coordinate) that
// demonstrate the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::vector<std::size_t> witness = {}, int level = -1);

    ErrorKind kind() const noexcept { return kind_; }
    // Message without the kind prefix that what() carries.
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }
    // Recursion level (subset size k) for pipeline errors, -1 otherwise.
    int level() const noexcept { return level_; }

private:
    ErrorKind kind_;
    std::string message_;
    std::vector<std::size_t> witness_;
    int level_;
};

} // namespace sraembed
