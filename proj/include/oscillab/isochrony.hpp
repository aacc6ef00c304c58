#pragma once
#include <array>
#include <span>

#include "oscillab/dynamics.hpp"

namespace oscillab {

/// Piecewise potential U(x) = U1(x) for x < 0, U2(x) for x > 0, U(0) = 0,
/// with U1 decreasing and U2 increasing on their half-lines.
struct PiecewisePotential {
    Fn1D U1, U2;

    double value(double x) const;
    double deriv(double x) const;
};

/// U1 = w1^2 x^2, U2 = w2^2 x^2 (no 1/2 factor; under H = v^2/2 + U the
/// period is (pi/sqrt(2)) (1/w1 + 1/w2) at every energy).
PiecewisePotential piecewise_quadratic(double w1, double w2);

/// Validates monotonicity by sampling; throws ArgumentError on violation.
PiecewisePotential make_piecewise(Fn1D U1, Fn1D U2);

/// Turning points U(x_left) = U(x_right) = E with x_left < 0 < x_right, by
/// bracketed bisection run to floating-point resolution (well below 1e-12);
/// the returned points lie on the inner side, U(x) < E.
std::array<double, 2> turning_points(const PiecewisePotential& pot, double E);

/// Period under H = v^2/2 + U(x):
///   T(E) = sqrt(2) * integral dx / sqrt(E - U(x))
/// between the turning points.  The inverse-square-root endpoint singularities
/// are removed by the substitution x = turning point -/+ s^2 per side; each
/// side is integrated by composite Gauss-Legendre refined to relative 1e-10
/// or better.
double period(const PiecewisePotential& pot, double E);

/// (max T - min T) / mean T over the energy list.
double isochrony_scan(const PiecewisePotential& pot, std::span<const double> energies);

/// Mechanical flow dv = -U'(x) for cross-checking the quadrature period
/// against integrator-measured zero crossings.
SystemRHS make_isochrony_rhs(const PiecewisePotential& pot);

} // namespace oscillab
