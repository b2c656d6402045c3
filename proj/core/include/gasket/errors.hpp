#pragma once

#include <stdexcept>
#include <string>

namespace gasket {

/// Thrown when a request would exceed a configured size/memory cap.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an operation is undefined at the requested generation
/// (e.g. the four-largest-loops coset below generation 2).
struct UnsupportedGenerationError : std::invalid_argument {
    explicit UnsupportedGenerationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a linear system that was required to be consistent has no solution.
struct NoSolutionError : std::runtime_error {
    explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a tensor contraction fails its proportionality check, which
/// signals an inconsistent port wiring convention.
struct ConventionViolationError : std::runtime_error {
    explicit ConventionViolationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gasket
