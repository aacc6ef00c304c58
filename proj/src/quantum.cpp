#include "oscillab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oscillab {

double beta_from_alpha(double alpha, double lambda) {
    if (!(alpha > 0.0))
        throw ArgumentError("beta_from_alpha: alpha must be positive");
    return 0.5 * (-lambda + std::sqrt(lambda * lambda + 4.0 * alpha * alpha));
}

QuantumParams quantum_from_alpha(double alpha, double lambda) {
    return {lambda, alpha, beta_from_alpha(alpha, lambda)};
}

QuantumParams quantum_from_beta(double beta, double lambda) {
    if (!(beta > 0.0))
        throw ArgumentError("quantum_from_beta: beta must be positive");
    const double a2 = beta * (beta + lambda);
    if (!(a2 > 0.0))
        throw ArgumentError("quantum_from_beta: beta (beta + lambda) must be positive");
    return {lambda, std::sqrt(a2), beta};
}

std::vector<double> ladder_spectrum(const QuantumParams& p, int n_levels) {
    if (n_levels < 1)
        throw ArgumentError("ladder_spectrum: n_levels must be >= 1");
    std::vector<double> out(n_levels);
    for (int n = 0; n < n_levels; ++n)
        out[n] = n * p.beta - 0.5 * n * n * p.lambda + 0.5 * p.beta;
    return out;
}

std::optional<double> continuum_threshold(const QuantumParams& p) {
    if (p.lambda > 0.0) return p.alpha * p.alpha / (2.0 * p.lambda);
    return std::nullopt;
}

std::optional<long> bound_state_count(const QuantumParams& p) {
    if (p.lambda <= 0.0) return std::nullopt;
    const double thr = p.alpha * p.alpha / (2.0 * p.lambda);
    long count = 0;
    for (long n = 0;; ++n) {
        if (!(p.beta - n * p.lambda > 0.0)) break;
        const double En = n * p.beta - 0.5 * n * n * p.lambda + 0.5 * p.beta;
        if (!(En < thr)) break;
        ++count;
    }
    return count;
}

double groundstate_psi0(double x, const QuantumParams& p) {
    if (p.lambda == 0.0)
        return std::exp(-0.5 * p.beta * x * x);
    const double d = 1.0 + p.lambda * x * x;
    if (d <= 0.0)
        throw DomainError("groundstate_psi0: x outside the admissible interval");
    return std::pow(d, -p.beta / (2.0 * p.lambda));
}

double adapted_coordinate(double x, double lambda) {
    if (lambda == 0.0) return x;
    if (lambda > 0.0) {
        const double s = std::sqrt(lambda);
        return std::asinh(s * x) / s;
    }
    const double s = std::sqrt(-lambda);
    const double u = s * x;
    if (std::fabs(u) > 1.0)
        throw DomainError("adapted_coordinate: x outside the admissible interval");
    return std::asin(u) / s;   // closed endpoints map to +-pi/(2 sqrt(-lambda))
}

double x_of_q(double q, double lambda) {
    if (lambda == 0.0) return q;
    if (lambda > 0.0) {
        const double s = std::sqrt(lambda);
        return std::sinh(s * q) / s;
    }
    const double s = std::sqrt(-lambda);
    if (std::fabs(q) > 0.5 * std::numbers::pi / s)
        throw DomainError("x_of_q: q outside the natural box");
    return std::sin(s * q) / s;
}

double natural_q_halfwidth(double lambda) {
    if (!(lambda < 0.0))
        throw ArgumentError("natural_q_halfwidth: defined for lambda < 0 only");
    return 0.5 * std::numbers::pi / std::sqrt(-lambda);
}

QGrid make_grid(const QuantumParams& p, const GridSpec& g) {
    if (g.n_points < 3)
        throw GridError("make_grid: need at least 3 interior points");
    double Q;
    if (p.lambda < 0.0) {
        Q = natural_q_halfwidth(p.lambda);
    } else {
        if (!(g.q_max > 0.0))
            throw GridError("make_grid: q_max must be positive for lambda >= 0");
        Q = g.q_max;
    }
    QGrid grid;
    grid.half_width = Q;
    grid.h = 2.0 * Q / (g.n_points + 1);
    grid.q.resize(g.n_points);
    for (int i = 0; i < g.n_points; ++i)
        grid.q[i] = -Q + (i + 1) * grid.h;
    return grid;
}

double potential_q(const QuantumParams& p, double q) {
    if (p.lambda > 0.0) {
        const double t = std::tanh(std::sqrt(p.lambda) * q);
        return 0.5 * p.alpha * p.alpha * t * t / p.lambda;
    }
    const double x = x_of_q(q, p.lambda);
    return 0.5 * p.alpha * p.alpha * x * x / (1.0 + p.lambda * x * x);
}

namespace {

// superpotential in the adapted coordinate: w = beta x(q) / sqrt(1 + lambda x(q)^2);
// tanh form for lambda > 0 for the same overflow reason as the potential
double superpotential_q(double beta, double lambda, double q) {
    if (lambda > 0.0)
        return beta * std::tanh(std::sqrt(lambda) * q) / std::sqrt(lambda);
    const double x = x_of_q(q, lambda);
    return beta * x / std::sqrt(1.0 + lambda * x * x);
}

} // namespace

SymTridiag discretize_hamiltonian(const QuantumParams& p, const GridSpec& g) {
    const QGrid grid = make_grid(p, g);
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    SymTridiag m;
    m.diag.resize(grid.q.size());
    m.off.assign(grid.q.size() - 1, -0.5 * inv_h2);
    for (std::size_t i = 0; i < grid.q.size(); ++i)
        m.diag[i] = inv_h2 + potential_q(p, grid.q[i]);
    return m;
}

namespace {

// Sturm count: number of eigenvalues of the tridiagonal matrix below x.
long sturm_count(const SymTridiag& m, double x) {
    const std::size_t n = m.size();
    const double tiny = std::numeric_limits<double>::min();
    long count = 0;
    double q = m.diag[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        if (q == 0.0) q = tiny;
        q = m.diag[i] - x - m.off[i - 1] * m.off[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace

std::vector<double> eig_lowest(const SymTridiag& m, int k) {
    const std::size_t n = m.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw ArgumentError("eig_lowest: k out of range");

    // Gershgorin bounds
    double lo = m.diag[0], hi = m.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::fabs(m.off[i - 1]);
        if (i + 1 < n) r += std::fabs(m.off[i]);
        lo = std::min(lo, m.diag[i] - r);
        hi = std::max(hi, m.diag[i] + r);
    }

    constexpr double tol = 1e-10;
    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            (sturm_count(m, mid) >= j + 1 ? b : a) = mid;
        }
        out[j] = 0.5 * (a + b);
        lo = a;   // eigenvalues are requested in ascending order
    }
    return out;
}

double shape_invariance_residual(const QuantumParams& p, const GridSpec& g,
                                 std::span<const std::function<double(double)>> trials_of_q) {
    const QGrid grid = make_grid(p, g);
    const std::size_t n = grid.q.size();
    const double h = grid.h;

    const double beta1 = p.beta - p.lambda;
    const double R1 = beta1 + 0.5 * p.lambda;

    std::vector<double> w(n), w1(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = superpotential_q(p.beta, p.lambda, grid.q[i]);
        w1[i] = superpotential_q(beta1, p.lambda, grid.q[i]);
    }

    // 4th-order central first derivative with Dirichlet zero padding.
    auto deriv = [&](const std::vector<double>& u, std::vector<double>& du) {
        auto at = [&](std::ptrdiff_t i) {
            return (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) ? 0.0 : u[i];
        };
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            du[i] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    };

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> u(n), du(n), t1(n), t2(n), lhs(n), rhs(n);

    auto apply_A = [&](const std::vector<double>& wvec, const std::vector<double>& in,
                       std::vector<double>& out) {
        deriv(in, du);
        for (std::size_t i = 0; i < n; ++i) out[i] = inv_sqrt2 * (du[i] + wvec[i] * in[i]);
    };
    auto apply_Adag = [&](const std::vector<double>& wvec, const std::vector<double>& in,
                          std::vector<double>& out) {
        deriv(in, du);
        for (std::size_t i = 0; i < n; ++i) out[i] = inv_sqrt2 * (-du[i] + wvec[i] * in[i]);
    };

    double worst = 0.0;
    for (const auto& trial : trials_of_q) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = trial(grid.q[i]);
            norm2 += u[i] * u[i];
        }
        if (norm2 == 0.0) continue;   // zero trial contributes 0 by convention

        apply_Adag(w, u, t1);      // A'(beta) u
        apply_A(w, t1, lhs);       // A(beta) A'(beta) u
        apply_A(w1, u, t1);        // A(beta1) u
        apply_Adag(w1, t1, t2);    // A'(beta1) A(beta1) u
        for (std::size_t i = 0; i < n; ++i) rhs[i] = t2[i] + R1 * u[i];

        double res2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = lhs[i] - rhs[i];
            res2 += d * d;
        }
        worst = std::max(worst, std::sqrt(res2 / norm2));
    }
    return worst;
}

SpectrumReport spectrum_report(const QuantumParams& p, const GridSpec& g, int n_levels) {
    const std::vector<double> ladder = ladder_spectrum(p, n_levels);
    const SymTridiag m = discretize_hamiltonian(p, g);
    const std::vector<double> numeric = eig_lowest(m, n_levels);

    SpectrumReport rep;
    rep.bound_states = bound_state_count(p);
    rep.threshold = continuum_threshold(p);
    rep.levels.resize(n_levels);
    for (int n = 0; n < n_levels; ++n)
        rep.levels[n] = {n, ladder[n], numeric[n], std::fabs(ladder[n] - numeric[n])};
    return rep;
}

} // namespace oscillab
