#include "oscillab/isochrony.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oscillab {

double PiecewisePotential::value(double x) const {
    if (x < 0.0) return fn_eval(U1, x);
    if (x > 0.0) return fn_eval(U2, x);
    return 0.0;
}

double PiecewisePotential::deriv(double x) const {
    if (x < 0.0) return fn_deriv(U1, x);
    if (x > 0.0) return fn_deriv(U2, x);
    return 0.0;
}

PiecewisePotential piecewise_quadratic(double w1, double w2) {
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw ArgumentError("piecewise_quadratic: frequencies must be positive");
    return {fn_quadratic(w1 * w1), fn_quadratic(w2 * w2)};
}

PiecewisePotential make_piecewise(Fn1D U1, Fn1D U2) {
    PiecewisePotential pot{std::move(U1), std::move(U2)};
    double prev1 = 0.0, prev2 = 0.0;
    for (double s = 1e-3; s <= 1e3; s *= 4.0) {
        const double u1 = pot.value(-s), u2 = pot.value(s);
        if (!(u1 > prev1) || !(u2 > prev2))
            throw ArgumentError("make_piecewise: U1 must decrease on x<0 and U2 increase on x>0");
        prev1 = u1;
        prev2 = u2;
    }
    return pot;
}

namespace {

// bisection on [lo, hi] with U(lo) < E <= U(hi); runs until the bracket cannot
// be split further and returns the inner endpoint.
template <class F>
double bisect_inner(const F& U, double lo, double hi, double E) {
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        (U(mid) < E ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

std::array<double, 2> turning_points(const PiecewisePotential& pot, double E) {
    if (!(E > 0.0))
        throw EnergyRangeError("turning_points: E must be positive");

    auto find = [&](double dir) {
        double hi = dir;
        for (int i = 0; i < 80 && pot.value(hi) < E; ++i) hi *= 2.0;
        if (pot.value(hi) < E)
            throw EnergyRangeError("turning_points: no turning point within search bounds");
        return bisect_inner([&](double x) { return pot.value(x); }, 0.0, hi, E);
    };
    return {find(-1e-8), find(1e-8)};
}

namespace {

// 20-point Gauss-Legendre nodes on [-1, 1], generated once by Newton iteration
// on the Legendre polynomial.
struct Gauss20 {
    std::array<double, 20> x{}, w{};
    Gauss20() {
        const int n = 20;
        for (int i = 0; i < n / 2; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double z1 = z;
                z = z1 - p0 / pp;
                if (std::fabs(z - z1) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }
};

const Gauss20& gauss20() {
    static const Gauss20 g;
    return g;
}

template <class F>
double gl_panels(const F& f, double a, double b, int panels) {
    const auto& g = gauss20();
    const double w = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * w;
        double s = 0.0;
        for (int i = 0; i < 20; ++i) s += g.w[i] * f(mid + 0.5 * w * g.x[i]);
        sum += 0.5 * w * s;
    }
    return sum;
}

// refine by panel doubling until successive values agree to 1e-13 relative
template <class F>
double gl_adaptive(const F& f, double a, double b) {
    double prev = gl_panels(f, a, b, 2);
    for (int panels = 4; panels <= 256; panels *= 2) {
        const double cur = gl_panels(f, a, b, panels);
        if (std::fabs(cur - prev) <= 1e-13 * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double period(const PiecewisePotential& pot, double E) {
    const auto [xl, xr] = turning_points(pot, E);

    // right side: x = xr - s^2, integrand 2 s / sqrt(E - U(xr - s^2))
    const double sr = std::sqrt(xr);
    const double right = gl_adaptive(
        [&](double s) {
            const double rad = E - pot.value(xr - s * s);
            return rad > 0.0 ? 2.0 * s / std::sqrt(rad) : 0.0;
        },
        0.0, sr);

    // left side: x = xl + s^2
    const double sl = std::sqrt(-xl);
    const double left = gl_adaptive(
        [&](double s) {
            const double rad = E - pot.value(xl + s * s);
            return rad > 0.0 ? 2.0 * s / std::sqrt(rad) : 0.0;
        },
        0.0, sl);

    return std::sqrt(2.0) * (left + right);
}

double isochrony_scan(const PiecewisePotential& pot, std::span<const double> energies) {
    if (energies.empty())
        throw ArgumentError("isochrony_scan: empty energy list");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    for (double E : energies) {
        const double T = period(pot, E);
        lo = std::min(lo, T);
        hi = std::max(hi, T);
        sum += T;
    }
    return (hi - lo) / (sum / static_cast<double>(energies.size()));
}

SystemRHS make_isochrony_rhs(const PiecewisePotential& pot) {
    SystemRHS sys;
    sys.tag = "isochrony_piecewise";
    sys.dim = 2;
    sys.eval = [pot](std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = -pot.deriv(y[0]);
    };
    return sys;
}

} // namespace oscillab
