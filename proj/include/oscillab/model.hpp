#pragma once
#include <cmath>
#include <string>

#include "oscillab/errors.hpp"

namespace oscillab {

/// Parameters of the lambda-deformed oscillator family.
/// All quantities are dimensionless; lambda = 0 is the undeformed (harmonic) limit
/// and is always handled by exact branches, never as a limit of lambda != 0 formulas.
struct DeformParams {
    double lambda = 0.0;
    double alpha  = 1.0;   ///< oscillator strength, > 0
};

/// Validating constructor; throws ArgumentError unless alpha > 0 and both fields are finite.
DeformParams make_deform(double lambda, double alpha);

struct State1D {
    double x = 0.0;
    double v = 0.0;
};

struct State2D {
    double x = 0.0, y = 0.0;
    double vx = 0.0, vy = 0.0;
};

struct PhaseState2D {
    double x = 0.0, y = 0.0;
    double px = 0.0, py = 0.0;
};

/// Core domain predicate: 1 + lambda*rsq > 0.
/// For lambda < 0 the dynamics is confined to the interior of the disc r^2 < 1/|lambda|.
bool validate_domain(double rsq, double lambda) noexcept;
bool validate_domain(const State1D& s, const DeformParams& p) noexcept;
bool validate_domain(const State2D& s, const DeformParams& p) noexcept;
bool validate_domain(const PhaseState2D& s, const DeformParams& p) noexcept;

/// Validating constructors: raw construction plus validate_domain is equivalent.
State1D checked_state(double x, double v, const DeformParams& p);
State2D checked_state(double x, double y, double vx, double vy, const DeformParams& p);
PhaseState2D checked_phase(double x, double y, double px, double py, const DeformParams& p);

/// Parameters of the nonstandard-Lagrangian oscillators.
/// omega0 = 0 selects the free (U = k x^2) case; omega0 > 0 the rational case with
/// per-axis frequencies n1*omega0, n2*omega0. (n1, n2) are stored coprime; the
/// constructor divides out gcd and rescales omega0 so the physical frequencies
/// are unchanged.
struct NonstdParams {
    double k1 = 0.0, k2 = 0.0;
    double omega0 = 0.0;
    int n1 = 1, n2 = 1;
};

NonstdParams make_nonstd(double k1, double k2, double omega0, int n1, int n2);

} // namespace oscillab
