#pragma once

#include <stdexcept>
#include <string>

namespace cavarray {

/// Invalid or inconsistent run configuration (bad units, missing sections,
/// out-of-range parameters). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Base class for runtime numerical failures. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Detuning coincides (within tolerance) with an excited-manifold resonance.
class SingularityError : public NumericalError {
public:
    explicit SingularityError(const std::string& msg) : NumericalError(msg) {}
};

/// Bracketed minimization found no interior minimum, or the objective is
/// degenerate (independent of the search variable).
class NoMinimumError : public NumericalError {
public:
    explicit NoMinimumError(const std::string& msg) : NumericalError(msg) {}
};

/// Least-squares fit failed to converge or produced an invalid parameter set.
class FitError : public NumericalError {
public:
    explicit FitError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace cavarray
