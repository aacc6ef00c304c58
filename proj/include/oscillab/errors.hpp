#pragma once
#include <stdexcept>
#include <string>

namespace oscillab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// State outside the admissible configuration region (1 + lambda*r^2 <= 0 for lambda < 0).
struct DomainError : Error { using Error::Error; };

/// Amplitude incompatible with the deformation (1 + lambda*A^2 must stay positive).
struct AmplitudeError : Error { using Error::Error; };

/// alpha(x) = 0 in a nonstandard-Lagrangian equation of motion.
struct SingularCoefficientError : Error { using Error::Error; };

/// Evaluation on the singular level set of a nonstandard Lagrangian (denominator = 0).
struct SingularLevelSetError : Error { using Error::Error; };

/// Closed-form solution queried at or across one of its poles.
struct PoleError : Error { using Error::Error; };

/// Step budget of the adaptive integrator exhausted.
struct BudgetError : Error { using Error::Error; };

/// Invalid discretization grid.
struct GridError : Error { using Error::Error; };

/// Invalid argument outside a more specific category.
struct ArgumentError : Error { using Error::Error; };

/// No turning point for the requested energy.
struct EnergyRangeError : Error { using Error::Error; };

/// Polar angle undefined at the origin.
struct AngleUndefinedError : Error { using Error::Error; };

/// Potential family does not match the requested coordinate chart.
struct FamilyMismatchError : Error { using Error::Error; };

/// Malformed or inconsistent configuration document.
struct ConfigError : Error { using Error::Error; };

} // namespace oscillab
