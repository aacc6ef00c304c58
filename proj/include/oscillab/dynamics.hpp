#pragma once
#include <array>
#include <functional>
#include <span>
#include <string>

#include "oscillab/model.hpp"

namespace oscillab {

/// Margin on 1 + lambda*r^2 below which the adaptive integrator declares a
/// boundary event.  The metric degenerates on the circle itself, so trajectories
/// are stopped strictly inside.
inline constexpr double kBoundaryMargin = 1e-9;

struct Deriv1D {
    double dx = 0.0, dv = 0.0;
};

struct PhaseDeriv2D {
    double dx = 0.0, dy = 0.0, dpx = 0.0, dpy = 0.0;
};

/// One-dimensional real function with an optional analytic derivative.
/// When df is absent, derivatives fall back to a 4th-order central difference
/// with step h = cbrt(eps) * max(1, |x|).
struct Fn1D {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

double fn_eval(const Fn1D& fn, double x);
double fn_deriv(const Fn1D& fn, double x);

Fn1D fn_const(double c);
Fn1D fn_quadratic(double k);             ///< k x^2
Fn1D fn_quadratic_plus(double a, double c); ///< a x^2 + c
Fn1D fn_power(double c, int n);          ///< c x^n

// ---------------------------------------------------------------------------
// Position-dependent-mass oscillator, 1D
// ---------------------------------------------------------------------------

/// dv = x (lambda v^2 - alpha^2) / (1 + lambda x^2).
Deriv1D ml1d_rhs(const State1D& s, const DeformParams& p);

/// Conserved energy (v^2 + alpha^2 x^2) / (2 (1 + lambda x^2)).
double ml1d_energy(const State1D& s, const DeformParams& p);

/// Amplitude-dependent frequency alpha / sqrt(1 + lambda A^2).
double ml1d_frequency(double A, const DeformParams& p);

/// Closed-form solution x = A cos(w t + phi), w^2 (1 + lambda A^2) = alpha^2.
State1D ml1d_exact(double t, double A, double phi, const DeformParams& p);

// ---------------------------------------------------------------------------
// Position-dependent-mass oscillator, 2D (phase-space form)
// ---------------------------------------------------------------------------

PhaseState2D legendre_2d(const State2D& s, double lambda);
State2D inverse_legendre_2d(const PhaseState2D& s, double lambda);

/// Potential entering H(lambda) = (px^2+py^2+lambda (x px + y py)^2)/2 + (alpha^2/2) V.
/// grad may be empty; gradients then use 4th-order central differences.
struct Potential2D {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> grad;
};

std::array<double, 2> potential_grad(const Potential2D& V, double x, double y);

Potential2D potential_r2();              ///< V = x^2 + y^2
Potential2D potential_superseparable(double lambda); ///< V = r^2 / (1 + lambda r^2)

double ml2d_hamiltonian(const PhaseState2D& s, const DeformParams& p, const Potential2D& V);
PhaseDeriv2D ml2d_hamiltonian_rhs(const PhaseState2D& s, const DeformParams& p, const Potential2D& V);

// ---------------------------------------------------------------------------
// Harmonic 2D baseline, frequencies n1 w0 and n2 w0
// ---------------------------------------------------------------------------

PhaseDeriv2D harmonic2d_rhs(const PhaseState2D& s, int n1, int n2, double omega0);

// ---------------------------------------------------------------------------
// Nonstandard Lagrangian L = 1 / (alpha(x) v + U(x))
// ---------------------------------------------------------------------------

/// dv = -[alpha alpha' v^2 + (3/2) alpha U' v + U U'/2] / alpha^2.
Deriv1D nonstd1d_rhs(const State1D& s, const Fn1D& alpha_fn, const Fn1D& U_fn);

/// E_L = -(2 alpha v + U) / (alpha v + U)^2, constant along solutions.
double energy_nonstd(const State1D& s, const Fn1D& alpha_fn, const Fn1D& U_fn);

/// Free case alpha = 1, U = k x^2: x(t) = 2t / (k t^2 - E).
State1D nonstd1d_exact_free(double t, double E, double k);

/// Omega case alpha = k, U = k^2 x^2 + w^2:
/// x(t) = w sqrt(E) sin(w t + phi) / (1 - k sqrt(E) cos(w t + phi)).
State1D nonstd1d_exact_omega(double t, double E, double phi, double k, double omega);

// ---------------------------------------------------------------------------
// Abstract autonomous vector field consumed by the integrators and the CLI
// ---------------------------------------------------------------------------

/// Deterministic, side-effect-free right-hand side.  The optional gates let the
/// integrator terminate cleanly:
///   - domain_gate: must stay > 0; <= 0 at the initial state is a DomainError,
///     a later crossing is a boundary event (used for the lambda < 0 disc).
///   - singular_gate: must not change sign; == 0 at the initial state is a
///     DomainError (used for nonstandard-Lagrangian denominators).
struct SystemRHS {
    std::string tag;
    std::size_t dim = 0;
    std::function<void(std::span<const double>, std::span<double>)> eval;
    std::function<double(std::span<const double>)> domain_gate;
    std::function<double(std::span<const double>)> singular_gate;
};

SystemRHS make_ml1d(const DeformParams& p);                    // state (x, v)
SystemRHS make_ml2d(const DeformParams& p, Potential2D V);     // state (x, y, px, py)
SystemRHS make_harmonic2d(int n1, int n2, double omega0);      // state (x, y, px, py)
SystemRHS make_nonstd1d(Fn1D alpha_fn, Fn1D U_fn);             // state (x, v)
SystemRHS make_nonstd1d_free(double k);                        // state (x, v)
SystemRHS make_nonstd1d_omega(double k, double omega);         // state (x, v)
SystemRHS make_nonstd2d(const NonstdParams& p);                // state (x, y, vx, vy)

/// Mechanical flow dv = -U'(x) for H = v^2/2 + U(x).
SystemRHS make_mechanical1d(Fn1D U, std::string tag);

} // namespace oscillab
