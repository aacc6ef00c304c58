#pragma once
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "oscillab/model.hpp"

namespace oscillab {

/// Parameters of the quantum deformed oscillator.  beta is the positive root
/// of beta (beta + lambda) = alpha^2; the factorization operators and the
/// ladder spectrum are expressed through it.
struct QuantumParams {
    double lambda = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
};

/// Positive root beta = (-lambda + sqrt(lambda^2 + 4 alpha^2)) / 2.
double beta_from_alpha(double alpha, double lambda);

QuantumParams quantum_from_alpha(double alpha, double lambda);
/// Throws ArgumentError unless beta > 0 and beta (beta + lambda) > 0.
QuantumParams quantum_from_beta(double beta, double lambda);

/// E_n = n beta - n^2 lambda / 2 + beta / 2 for n = 0 .. n_levels-1.
std::vector<double> ladder_spectrum(const QuantumParams& p, int n_levels);

/// Saturation value of the potential, alpha^2 / (2 lambda); present only for
/// lambda > 0 where it bounds the discrete spectrum.
std::optional<double> continuum_threshold(const QuantumParams& p);

/// Number of bound states: infinite (nullopt) for lambda <= 0; for lambda > 0
/// the count of n >= 0 with ladder increment beta - n lambda > 0 and
/// E_n < alpha^2 / (2 lambda).
std::optional<long> bound_state_count(const QuantumParams& p);

/// Unnormalized ground state (1 + lambda x^2)^(-beta/(2 lambda)); exact
/// Gaussian branch exp(-beta x^2 / 2) at lambda = 0.
double groundstate_psi0(double x, const QuantumParams& p);

/// Coordinate q in which P = -i sqrt(1 + lambda x^2) d/dx becomes -i d/dq:
/// q = asinh(sqrt(lambda) x)/sqrt(lambda)   (lambda > 0)
/// q = asin(sqrt(-lambda) x)/sqrt(-lambda)  (lambda < 0), and q = x at 0.
/// Under this map (1 + lambda x^2) d^2/dx^2 + lambda x d/dx = d^2/dq^2 exactly.
double adapted_coordinate(double x, double lambda);
double x_of_q(double q, double lambda);

/// Half-width of the natural q-box for lambda < 0: pi / (2 sqrt(-lambda)).
double natural_q_halfwidth(double lambda);

/// Potential alpha^2 x(q)^2 / (2 (1 + lambda x(q)^2)) expressed in the adapted
/// coordinate; for lambda > 0 this is the overflow-free form
/// (alpha^2 / (2 lambda)) tanh^2(sqrt(lambda) q).
double potential_q(const QuantumParams& p, double q);

/// Uniform Dirichlet grid of interior points.  q_max applies for lambda >= 0;
/// for lambda < 0 the box is always the full natural interval.
struct GridSpec {
    int n_points = 4000;
    double q_max = 10.0;
};

struct QGrid {
    double h = 0.0;
    std::vector<double> q;   ///< interior nodes
    double half_width = 0.0;
};

QGrid make_grid(const QuantumParams& p, const GridSpec& g);

struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;   ///< size diag.size() - 1
    std::size_t size() const { return diag.size(); }
};

/// 3-point discretization of -d^2/dq^2 / 2 + alpha^2 x(q)^2 / (2 (1+lambda x(q)^2))
/// with Dirichlet boundaries; symmetric by construction.
SymTridiag discretize_hamiltonian(const QuantumParams& p, const GridSpec& g);

/// k smallest eigenvalues by Sturm-sequence bisection to absolute tolerance
/// 1e-10, sorted ascending.  Deterministic.
std::vector<double> eig_lowest(const SymTridiag& m, int k);

/// Max over trial functions u of || A(b) A'(b) u - (A'(b1) A(b1) + R(b1)) u || / ||u||
/// with b1 = beta - lambda and R(b) = b + lambda/2, using 4th-order central
/// first-derivative stencils on the grid.  Trials must vanish at the box ends.
double shape_invariance_residual(const QuantumParams& p, const GridSpec& g,
                                 std::span<const std::function<double(double)>> trials_of_q);

struct SpectrumLevel {
    int n = 0;
    double ladder = 0.0;
    double numeric = 0.0;
    double abs_diff = 0.0;
};

struct SpectrumReport {
    std::vector<SpectrumLevel> levels;
    std::optional<long> bound_states;     ///< nullopt = infinite
    std::optional<double> threshold;      ///< lambda > 0 only
};

/// Ladder levels against the diagonalized adapted-coordinate operator.
SpectrumReport spectrum_report(const QuantumParams& p, const GridSpec& g, int n_levels);

} // namespace oscillab
