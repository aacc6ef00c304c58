#include "oscillab/dynamics.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace oscillab {

namespace {

const double kFdStep = std::cbrt(std::numeric_limits<double>::epsilon());

double fd_step(double x) { return kFdStep * std::fmax(1.0, std::fabs(x)); }

// 4th-order central difference of a scalar function.
template <class F>
double central_diff4(const F& f, double x) {
    const double h = fd_step(x);
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

} // namespace

double fn_eval(const Fn1D& fn, double x) { return fn.f(x); }

double fn_deriv(const Fn1D& fn, double x) {
    if (fn.df) return fn.df(x);
    return central_diff4(fn.f, x);
}

Fn1D fn_const(double c) {
    return Fn1D{[c](double) { return c; }, [](double) { return 0.0; }};
}

Fn1D fn_quadratic(double k) {
    return Fn1D{[k](double x) { return k * x * x; }, [k](double x) { return 2.0 * k * x; }};
}

Fn1D fn_quadratic_plus(double a, double c) {
    return Fn1D{[a, c](double x) { return a * x * x + c; }, [a](double x) { return 2.0 * a * x; }};
}

Fn1D fn_power(double c, int n) {
    return Fn1D{[c, n](double x) { return c * std::pow(x, n); },
                [c, n](double x) { return c * n * std::pow(x, n - 1); }};
}

// ---------------------------------------------------------------------------
// ML oscillator, 1D
// ---------------------------------------------------------------------------

Deriv1D ml1d_rhs(const State1D& s, const DeformParams& p) {
    if (!validate_domain(s, p))
        throw DomainError("ml1d_rhs: state outside 1 + lambda*x^2 > 0");
    if (p.lambda == 0.0)
        return {s.v, -(p.alpha * p.alpha) * s.x};   // exact harmonic branch
    const double num = s.x * (p.lambda * s.v * s.v - p.alpha * p.alpha);
    return {s.v, num / (1.0 + p.lambda * s.x * s.x)};
}

double ml1d_energy(const State1D& s, const DeformParams& p) {
    if (!validate_domain(s, p))
        throw DomainError("ml1d_energy: state outside the admissible region");
    return 0.5 * (s.v * s.v + p.alpha * p.alpha * s.x * s.x) / (1.0 + p.lambda * s.x * s.x);
}

double ml1d_frequency(double A, const DeformParams& p) {
    const double m = 1.0 + p.lambda * A * A;
    if (m <= 0.0)
        throw AmplitudeError("ml1d_frequency: 1 + lambda*A^2 must be positive");
    return p.alpha / std::sqrt(m);
}

State1D ml1d_exact(double t, double A, double phi, const DeformParams& p) {
    const double w = ml1d_frequency(A, p);
    const double th = w * t + phi;
    return {A * std::cos(th), -A * w * std::sin(th)};
}

// ---------------------------------------------------------------------------
// ML oscillator, 2D
// ---------------------------------------------------------------------------

PhaseState2D legendre_2d(const State2D& s, double lambda) {
    if (!validate_domain(s, DeformParams{lambda, 1.0}))
        throw DomainError("legendre_2d: state outside the admissible region");
    if (lambda == 0.0)
        return {s.x, s.y, s.vx, s.vy};
    const double d = 1.0 + lambda * (s.x * s.x + s.y * s.y);
    const double px = ((1.0 + lambda * s.y * s.y) * s.vx - lambda * s.x * s.y * s.vy) / d;
    const double py = ((1.0 + lambda * s.x * s.x) * s.vy - lambda * s.x * s.y * s.vx) / d;
    return {s.x, s.y, px, py};
}

State2D inverse_legendre_2d(const PhaseState2D& s, double lambda) {
    if (!validate_domain(s, DeformParams{lambda, 1.0}))
        throw DomainError("inverse_legendre_2d: state outside the admissible region");
    if (lambda == 0.0)
        return {s.x, s.y, s.px, s.py};
    const double radial = s.x * s.px + s.y * s.py;
    return {s.x, s.y, s.px + lambda * s.x * radial, s.py + lambda * s.y * radial};
}

std::array<double, 2> potential_grad(const Potential2D& V, double x, double y) {
    if (V.grad) return V.grad(x, y);
    const auto& f = V.value;
    return {central_diff4([&](double u) { return f(u, y); }, x),
            central_diff4([&](double u) { return f(x, u); }, y)};
}

Potential2D potential_r2() {
    return {[](double x, double y) { return x * x + y * y; },
            [](double x, double y) { return std::array<double, 2>{2.0 * x, 2.0 * y}; }};
}

Potential2D potential_superseparable(double lambda) {
    return {[lambda](double x, double y) {
                const double r2 = x * x + y * y;
                return r2 / (1.0 + lambda * r2);
            },
            [lambda](double x, double y) {
                const double d = 1.0 + lambda * (x * x + y * y);
                const double c = 2.0 / (d * d);
                return std::array<double, 2>{c * x, c * y};
            }};
}

double ml2d_hamiltonian(const PhaseState2D& s, const DeformParams& p, const Potential2D& V) {
    if (!validate_domain(s, p))
        throw DomainError("ml2d_hamiltonian: state outside the admissible region");
    const double radial = s.x * s.px + s.y * s.py;
    const double kin = 0.5 * (s.px * s.px + s.py * s.py + p.lambda * radial * radial);
    return kin + 0.5 * p.alpha * p.alpha * V.value(s.x, s.y);
}

PhaseDeriv2D ml2d_hamiltonian_rhs(const PhaseState2D& s, const DeformParams& p, const Potential2D& V) {
    if (!validate_domain(s, p))
        throw DomainError("ml2d_hamiltonian_rhs: state outside the admissible region");
    const auto g = potential_grad(V, s.x, s.y);
    const double a2h = 0.5 * p.alpha * p.alpha;
    if (p.lambda == 0.0)
        return {s.px, s.py, -a2h * g[0], -a2h * g[1]};
    const double radial = s.x * s.px + s.y * s.py;
    return {s.px + p.lambda * s.x * radial,
            s.py + p.lambda * s.y * radial,
            -(p.lambda * radial * s.px + a2h * g[0]),
            -(p.lambda * radial * s.py + a2h * g[1])};
}

PhaseDeriv2D harmonic2d_rhs(const PhaseState2D& s, int n1, int n2, double omega0) {
    const double w1 = n1 * omega0, w2 = n2 * omega0;
    return {s.px, s.py, -w1 * w1 * s.x, -w2 * w2 * s.y};
}

// ---------------------------------------------------------------------------
// Nonstandard Lagrangians
// ---------------------------------------------------------------------------

Deriv1D nonstd1d_rhs(const State1D& s, const Fn1D& alpha_fn, const Fn1D& U_fn) {
    const double a = fn_eval(alpha_fn, s.x);
    if (a == 0.0)
        throw SingularCoefficientError("nonstd1d_rhs: alpha(x) = 0");
    const double da = fn_deriv(alpha_fn, s.x);
    const double U = fn_eval(U_fn, s.x);
    const double dU = fn_deriv(U_fn, s.x);
    const double num = a * da * s.v * s.v + 1.5 * a * dU * s.v + 0.5 * U * dU;
    return {s.v, -num / (a * a)};
}

double energy_nonstd(const State1D& s, const Fn1D& alpha_fn, const Fn1D& U_fn) {
    const double a = fn_eval(alpha_fn, s.x);
    const double U = fn_eval(U_fn, s.x);
    const double phi = a * s.v + U;
    if (phi == 0.0)
        throw SingularLevelSetError("energy_nonstd: alpha(x) v + U(x) = 0");
    return -(2.0 * a * s.v + U) / (phi * phi);
}

State1D nonstd1d_exact_free(double t, double E, double k) {
    const double d = k * t * t - E;
    if (d == 0.0)
        throw PoleError("nonstd1d_exact_free: k t^2 - E = 0");
    return {2.0 * t / d, -2.0 * (k * t * t + E) / (d * d)};
}

State1D nonstd1d_exact_omega(double t, double E, double phi, double k, double omega) {
    if (E <= 0.0)
        throw ArgumentError("nonstd1d_exact_omega: E must be positive");
    const double sE = std::sqrt(E);
    const double th = omega * t + phi;
    const double d = 1.0 - k * sE * std::cos(th);
    if (d == 0.0)
        throw PoleError("nonstd1d_exact_omega: 1 - k sqrt(E) cos = 0");
    const double x = omega * sE * std::sin(th) / d;
    const double v = omega * omega * sE * (std::cos(th) - k * sE) / (d * d);
    return {x, v};
}

// ---------------------------------------------------------------------------
// SystemRHS factories
// ---------------------------------------------------------------------------

namespace {

std::function<double(std::span<const double>)> disc_gate_1d(double lambda) {
    if (lambda >= 0.0) return {};
    return [lambda](std::span<const double> y) {
        return 1.0 + lambda * y[0] * y[0] - kBoundaryMargin;
    };
}

std::function<double(std::span<const double>)> disc_gate_2d(double lambda) {
    if (lambda >= 0.0) return {};
    return [lambda](std::span<const double> y) {
        return 1.0 + lambda * (y[0] * y[0] + y[1] * y[1]) - kBoundaryMargin;
    };
}

} // namespace

SystemRHS make_ml1d(const DeformParams& p) {
    SystemRHS sys;
    sys.tag = "ml1d";
    sys.dim = 2;
    sys.eval = [p](std::span<const double> y, std::span<double> dy) {
        const Deriv1D d = ml1d_rhs(State1D{y[0], y[1]}, p);
        dy[0] = d.dx;
        dy[1] = d.dv;
    };
    sys.domain_gate = disc_gate_1d(p.lambda);
    return sys;
}

SystemRHS make_ml2d(const DeformParams& p, Potential2D V) {
    SystemRHS sys;
    sys.tag = "ml2d_hamiltonian";
    sys.dim = 4;
    sys.eval = [p, V = std::move(V)](std::span<const double> y, std::span<double> dy) {
        const PhaseDeriv2D d = ml2d_hamiltonian_rhs(PhaseState2D{y[0], y[1], y[2], y[3]}, p, V);
        dy[0] = d.dx;
        dy[1] = d.dy;
        dy[2] = d.dpx;
        dy[3] = d.dpy;
    };
    sys.domain_gate = disc_gate_2d(p.lambda);
    return sys;
}

SystemRHS make_harmonic2d(int n1, int n2, double omega0) {
    if (n1 <= 0 || n2 <= 0 || !(omega0 > 0.0))
        throw ArgumentError("make_harmonic2d: need n1, n2 >= 1 and omega0 > 0");
    SystemRHS sys;
    sys.tag = "harmonic2d";
    sys.dim = 4;
    sys.eval = [n1, n2, omega0](std::span<const double> y, std::span<double> dy) {
        const PhaseDeriv2D d = harmonic2d_rhs(PhaseState2D{y[0], y[1], y[2], y[3]}, n1, n2, omega0);
        dy[0] = d.dx;
        dy[1] = d.dy;
        dy[2] = d.dpx;
        dy[3] = d.dpy;
    };
    return sys;
}

SystemRHS make_nonstd1d(Fn1D alpha_fn, Fn1D U_fn) {
    SystemRHS sys;
    sys.tag = "nonstd1d";
    sys.dim = 2;
    sys.eval = [alpha_fn, U_fn](std::span<const double> y, std::span<double> dy) {
        const Deriv1D d = nonstd1d_rhs(State1D{y[0], y[1]}, alpha_fn, U_fn);
        dy[0] = d.dx;
        dy[1] = d.dv;
    };
    sys.singular_gate = [alpha_fn, U_fn](std::span<const double> y) {
        return fn_eval(alpha_fn, y[0]) * y[1] + fn_eval(U_fn, y[0]);
    };
    return sys;
}

SystemRHS make_nonstd1d_free(double k) {
    SystemRHS sys;
    sys.tag = "nonstd1d_free";
    sys.dim = 2;
    sys.eval = [k](std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -(3.0 * k * y[0] * y[1] + k * k * y[0] * y[0] * y[0]);
    };
    sys.singular_gate = [k](std::span<const double> y) { return y[1] + k * y[0] * y[0]; };
    return sys;
}

SystemRHS make_nonstd1d_omega(double k, double omega) {
    SystemRHS sys;
    sys.tag = "nonstd1d_omega";
    sys.dim = 2;
    sys.eval = [k, omega](std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -(3.0 * k * y[0] * y[1] + k * k * y[0] * y[0] * y[0] + omega * omega * y[0]);
    };
    sys.singular_gate = [k, omega](std::span<const double> y) {
        return k * y[1] + k * k * y[0] * y[0] + omega * omega;
    };
    return sys;
}

SystemRHS make_nonstd2d(const NonstdParams& p) {
    SystemRHS sys;
    sys.tag = "nonstd2d";
    sys.dim = 4;
    const double w1 = p.n1 * p.omega0, w2 = p.n2 * p.omega0;
    const double k1 = p.k1, k2 = p.k2;
    sys.eval = [k1, k2, w1, w2](std::span<const double> y, std::span<double> dy) {
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -(3.0 * k1 * y[0] * y[2] + k1 * k1 * y[0] * y[0] * y[0] + w1 * w1 * y[0]);
        dy[3] = -(3.0 * k2 * y[1] * y[3] + k2 * k2 * y[1] * y[1] * y[1] + w2 * w2 * y[1]);
    };
    if (p.omega0 == 0.0) {
        sys.singular_gate = [k1, k2](std::span<const double> y) {
            return (y[2] + k1 * y[0] * y[0]) * (y[3] + k2 * y[1] * y[1]);
        };
    } else {
        sys.singular_gate = [k1, k2, w1, w2](std::span<const double> y) {
            return (k1 * y[2] + k1 * k1 * y[0] * y[0] + w1 * w1) *
                   (k2 * y[3] + k2 * k2 * y[1] * y[1] + w2 * w2);
        };
    }
    return sys;
}

SystemRHS make_mechanical1d(Fn1D U, std::string tag) {
    SystemRHS sys;
    sys.tag = std::move(tag);
    sys.dim = 2;
    sys.eval = [U = std::move(U)](std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -fn_deriv(U, y[0]);
    };
    return sys;
}

} // namespace oscillab
