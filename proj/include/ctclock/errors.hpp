#pragma once

#include <stdexcept>
#include <string>

namespace ctclock {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A spectrum violating the construction invariants (degenerate, zero or
/// non-monotone levels, bad omega/hbar, too few levels).
struct InvalidSpectrum : Error {
    using Error::Error;
};

/// Requested truncation exceeds the stored levels.
struct TruncationError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct InvalidInput : Error {
    using Error::Error;
};

/// A caller broke a documented precondition (non-Hermitian observable,
/// unnormalized state where one is required, ...).
struct ContractViolation : Error {
    using Error::Error;
};

/// State has weight outside the two-level block it is being read in.
struct ProjectionError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace ctclock
