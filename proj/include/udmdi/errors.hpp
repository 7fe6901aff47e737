#pragma once

#include <stdexcept>
#include <string>

namespace udmdi {

/// A closed-form expression left its mathematical domain at run time
/// (e.g. the argument of a logarithm became non-positive). Reported,
/// never silently clamped.
struct NumericalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The unmodulated-quadrature channel parameters violate the
/// Heisenberg admissibility constraint.
struct PhysicalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter estimation produced an unusable channel estimate
/// (worst-case amplitude transmission fell to zero or below).
struct EstimationFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A root search was requested on a range where the quantity never
/// changes sign (e.g. max-distance with a rate that is already zero).
struct NoRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration file or option error.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace udmdi
