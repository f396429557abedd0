#pragma once

#include <stdexcept>
#include <string>

namespace znd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed scenario files, parameters outside the model
/// hypotheses, inadmissible piston speeds. CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Failure while computing: solver divergence, state leaving its domain,
/// time-step collapse. CLI exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

/// Thermodynamic evaluation outside the admissible domain (nu <= 0, log of a
/// non-positive argument, ...).
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};

/// No admissible downstream state exists at the requested point of the
/// Hugoniot locus (negative radicand or non-positive e^s in the jump solve).
struct LocusDomainError : NumericalError {
    using NumericalError::NumericalError;
};

/// Requested piston speed lies outside the admissible window.
struct AdmissibilityError : ConfigError {
    using ConfigError::ConfigError;
};

/// Newton iteration for the shock-boundary maps failed to converge.
struct NewtonError : NumericalError {
    using NumericalError::NumericalError;
};

/// Time step collapsed below the resolvable floor.
struct CflError : NumericalError {
    using NumericalError::NumericalError;
};

/// A reconstructed state left the domain the scheme is valid on
/// (downstream nu outside (0,1), Lax condition lost, ...).
struct StateEscapeError : NumericalError {
    using NumericalError::NumericalError;
};

/// A structural hypothesis of the model failed at runtime (det k <= 0,
/// |h10| >= 1). Signals parameters outside the theory, not a code bug.
struct HypothesisError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace znd
