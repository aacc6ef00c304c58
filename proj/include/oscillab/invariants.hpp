#pragma once
#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "oscillab/integrate.hpp"

namespace oscillab {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Constants of motion of the individual systems
// ---------------------------------------------------------------------------

struct KPair {
    Complex K1, K2;
};

/// K_i = P_i + i alpha c_i / sqrt(1 + lambda r^2) with
/// P_1 = (vx - lambda J y)/sqrt(1 + lambda r^2), P_2 = (vy + lambda J x)/sqrt(...),
/// J = x vy - y vx.  All products K_i K_j* are constants of the ML-2D motion.
KPair eval_K(const State2D& s, const DeformParams& p);

struct I123 {
    double I1, I2, I3;
};

/// I1 = |K1|^2, I2 = |K2|^2, I3 = Im(K1 K2*) = alpha (x vy - y vx).
I123 eval_I123(const State2D& s, const DeformParams& p);

/// J = Kx^{n2} (Ky*)^{n1} with Kx = px + i n1 w0 x, Ky = py + i n2 w0 y.
Complex eval_harmonic_J(const PhaseState2D& s, int n1, int n2, double omega0);

struct NonstdIntegrals {
    double E1, E2, I3, I4;
};

/// First integrals of the free 2D nonstandard system
/// L = 1/(vx + k1 x^2) + 1/(vy + k2 y^2).
NonstdIntegrals eval_nonstd_integrals(const State2D& s, double k1, double k2);

/// Rational-case constant K1^{n2} (K2*)^{n1} with
/// K_i = (v_i + k_i c_i^2 + i n_i w0 c_i) / (k_i v_i + k_i^2 c_i^2 + n_i^2 w0^2).
Complex eval_nonstd_K(const State2D& s, const NonstdParams& p);

// ---------------------------------------------------------------------------
// Drift measurement along trajectories
// ---------------------------------------------------------------------------

struct InvariantEvaluator {
    std::string name;
    std::function<Complex(std::span<const double>)> eval;
};

struct InvariantReport {
    std::string name;
    Complex initial{};
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;            ///< relative to max(|initial|, 1e-12)
    std::size_t samples = 0;
    std::vector<std::size_t> error_samples; ///< indices where the evaluator threw
};

InvariantReport drift_report(const Trajectory& traj, const InvariantEvaluator& inv);

// ---------------------------------------------------------------------------
// Symmetry algebra and Poisson brackets
// ---------------------------------------------------------------------------

/// Residuals of [X1,X2] - lambda XJ, [X1,XJ] - X2, [X2,XJ] + X1 at a point,
/// with the brackets assembled from analytic partial derivatives of the
/// vector-field components X1 = sqrt(1+lambda r^2) d/dx etc.
struct BracketResiduals {
    std::array<double, 2> r12, r1J, r2J;
    double max_norm() const;
};

BracketResiduals lie_bracket_residual(double lambda, double x, double y);

using PhaseFn = std::function<double(const PhaseState2D&)>;

/// {f,g} by 4th-order central differences with step h on each canonical pair.
double poisson_bracket(const PhaseFn& f, const PhaseFn& g, const PhaseState2D& s, double h);

} // namespace oscillab
