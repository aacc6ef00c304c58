#pragma once
#include <array>

#include "oscillab/dynamics.hpp"

namespace oscillab {

/// Coordinate charts in which H(lambda) separates, plus the potential that is
/// separable in all three at once.
enum class Family { zx, zy, polar, superseparable };
const char* to_string(Family f);

// Chart maps.  zx: (x, y) -> (x / sqrt(1 + lambda y^2), y); zy symmetric.
double to_zx(double x, double y, double lambda);      // DomainError if 1 + lambda y^2 <= 0
double zx_inverse(double zx, double y, double lambda);
double to_zy(double x, double y, double lambda);      // DomainError if 1 + lambda x^2 <= 0
double zy_inverse(double x, double zy, double lambda);

struct Polar {
    double r, phi;
};
Polar to_polar(double x, double y);                   // AngleUndefinedError at the origin
std::array<double, 2> polar_inverse(double r, double phi);

/// Momenta conjugate to (r, phi): p_r = (x px + y py)/r, p_phi = x py - y px.
struct PolarMomenta {
    double pr, pphi;
};
PolarMomenta polar_momenta(const PhaseState2D& s);    // AngleUndefinedError at the origin

/// Separable potential of one family:
///   zx:    V = W1(z_x)/(1 + lambda y^2) + W2(y)
///   zy:    V = W1(x) + W2(z_y)/(1 + lambda x^2)
///   polar: V = W1(r) + W2(phi)/r^2          (W1 = F, W2 = G)
///   superseparable: V = r^2/(1 + lambda r^2), member of all three families.
struct SeparablePotential {
    Family family = Family::superseparable;
    Fn1D W1, W2;

    double value(double x, double y, double lambda) const;
    /// View as a Potential2D for the H(lambda) flow; gradient is analytic
    /// via the chain rule when W1/W2 carry derivatives, finite differences
    /// otherwise.
    Potential2D as_potential2d(double lambda) const;
};

SeparablePotential zx_potential(Fn1D W1, Fn1D W2);
SeparablePotential zy_potential(Fn1D W1, Fn1D W2);
SeparablePotential polar_potential(Fn1D F, Fn1D G);
SeparablePotential superseparable_potential();
/// The super-separable potential written as a member of the given chart family.
SeparablePotential superseparable_as(Family f, double lambda);

/// (alpha^2/2) r^2 / (1 + lambda r^2).
double superseparable_V(double x, double y, const DeformParams& p);

/// Max pairwise discrepancy of the three chart forms of the super-separable
/// potential at a point.
double superseparable_identity_residual(double x, double y, const DeformParams& p);

struct QuadraticIntegrals {
    double I1, I2;   ///< I1 + I2 = 2 H(lambda) in every family
};

QuadraticIntegrals quadratic_integrals(Family f, const PhaseState2D& s, const DeformParams& p,
                                       const SeparablePotential& pot);

/// |LHS - 2E| of the family's separated Hamilton-Jacobi form with momenta in
/// place of dS; zero when E = H(lambda) at the state.
double hj_residual(Family f, const PhaseState2D& s, const DeformParams& p,
                   const SeparablePotential& pot, double E);

} // namespace oscillab
