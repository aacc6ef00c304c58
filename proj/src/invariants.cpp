#include "oscillab/invariants.hpp"

#include <cmath>

namespace oscillab {

namespace {

// integer power by repeated multiplication (std::pow(complex, int) routes
// through exp/log)
Complex ipow(Complex z, int n) {
    Complex out{1.0, 0.0};
    for (; n > 0; n >>= 1, z *= z)
        if (n & 1) out *= z;
    return out;
}

} // namespace

KPair eval_K(const State2D& s, const DeformParams& p) {
    if (!validate_domain(s, p))
        throw DomainError("eval_K: state outside the admissible region");
    const double J = s.x * s.vy - s.y * s.vx;
    const double root = std::sqrt(1.0 + p.lambda * (s.x * s.x + s.y * s.y));
    const double P1 = (s.vx - p.lambda * J * s.y) / root;
    const double P2 = (s.vy + p.lambda * J * s.x) / root;
    return {Complex{P1, p.alpha * s.x / root}, Complex{P2, p.alpha * s.y / root}};
}

I123 eval_I123(const State2D& s, const DeformParams& p) {
    const KPair k = eval_K(s, p);
    return {std::norm(k.K1), std::norm(k.K2), p.alpha * (s.x * s.vy - s.y * s.vx)};
}

Complex eval_harmonic_J(const PhaseState2D& s, int n1, int n2, double omega0) {
    const Complex Kx{s.px, n1 * omega0 * s.x};
    const Complex Ky{s.py, n2 * omega0 * s.y};
    return ipow(Kx, n2) * ipow(std::conj(Ky), n1);
}

NonstdIntegrals eval_nonstd_integrals(const State2D& s, double k1, double k2) {
    const double d1 = s.vx + k1 * s.x * s.x;
    const double d2 = s.vy + k2 * s.y * s.y;
    if (d1 == 0.0 || d2 == 0.0)
        throw SingularLevelSetError("eval_nonstd_integrals: v + k c^2 = 0 in one channel");
    const double E1 = -(2.0 * s.vx + k1 * s.x * s.x) / (d1 * d1);
    const double E2 = -(2.0 * s.vy + k2 * s.y * s.y) / (d2 * d2);
    const double I3 = s.x / d1 - s.y / d2;
    const double I4 = k2 / d1 + k1 / d2 - k1 * k2 * s.x * s.y / (d1 * d2);
    return {E1, E2, I3, I4};
}

Complex eval_nonstd_K(const State2D& s, const NonstdParams& p) {
    const double w1 = p.n1 * p.omega0, w2 = p.n2 * p.omega0;
    const double d1 = p.k1 * s.vx + p.k1 * p.k1 * s.x * s.x + w1 * w1;
    const double d2 = p.k2 * s.vy + p.k2 * p.k2 * s.y * s.y + w2 * w2;
    if (d1 == 0.0 || d2 == 0.0)
        throw SingularLevelSetError("eval_nonstd_K: singular denominator");
    const Complex K1 = Complex{s.vx + p.k1 * s.x * s.x, w1 * s.x} / d1;
    const Complex K2 = Complex{s.vy + p.k2 * s.y * s.y, w2 * s.y} / d2;
    return ipow(K1, p.n2) * ipow(std::conj(K2), p.n1);
}

InvariantReport drift_report(const Trajectory& traj, const InvariantEvaluator& inv) {
    if (traj.size() == 0)
        throw ArgumentError("drift_report: empty trajectory");
    InvariantReport rep;
    rep.name = inv.name;

    bool have_initial = false;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        Complex v;
        try {
            v = inv.eval(traj.state(i));
        } catch (const Error&) {
            rep.error_samples.push_back(i);
            continue;
        }
        if (!have_initial) {
            rep.initial = v;
            have_initial = true;
        }
        rep.max_abs_drift = std::max(rep.max_abs_drift, std::abs(v - rep.initial));
        ++rep.samples;
    }
    rep.max_rel_drift = rep.max_abs_drift / std::max(std::abs(rep.initial), 1e-12);
    return rep;
}

double BracketResiduals::max_norm() const {
    auto nrm = [](const std::array<double, 2>& v) { return std::hypot(v[0], v[1]); };
    return std::max({nrm(r12), nrm(r1J), nrm(r2J)});
}

BracketResiduals lie_bracket_residual(double lambda, double x, double y) {
    if (!validate_domain(x * x + y * y, lambda))
        throw DomainError("lie_bracket_residual: point outside the admissible region");
    const double s = std::sqrt(1.0 + lambda * (x * x + y * y));
    const double sx = lambda * x / s, sy = lambda * y / s;   // partials of s

    // Vector fields and their Jacobians: X1 = (s,0), X2 = (0,s), XJ = (-y,x).
    // [V,W]^i = V^j d_j W^i - W^j d_j V^i with analytic partials.
    const std::array<double, 2> X1{s, 0.0}, X2{0.0, s}, XJ{-y, x};
    const std::array<std::array<double, 2>, 2> J1{{{sx, sy}, {0.0, 0.0}}};
    const std::array<std::array<double, 2>, 2> J2{{{0.0, 0.0}, {sx, sy}}};
    const std::array<std::array<double, 2>, 2> JJ{{{0.0, -1.0}, {1.0, 0.0}}};

    auto bracket = [](const std::array<double, 2>& V, const std::array<std::array<double, 2>, 2>& JV,
                      const std::array<double, 2>& W, const std::array<std::array<double, 2>, 2>& JW) {
        std::array<double, 2> out{};
        for (int i = 0; i < 2; ++i)
            out[i] = JW[i][0] * V[0] + JW[i][1] * V[1] - JV[i][0] * W[0] - JV[i][1] * W[1];
        return out;
    };

    const auto b12 = bracket(X1, J1, X2, J2);
    const auto b1J = bracket(X1, J1, XJ, JJ);
    const auto b2J = bracket(X2, J2, XJ, JJ);

    BracketResiduals res;
    for (int i = 0; i < 2; ++i) {
        res.r12[i] = b12[i] - lambda * XJ[i];
        res.r1J[i] = b1J[i] - X2[i];
        res.r2J[i] = b2J[i] + X1[i];
    }
    return res;
}

namespace {

// 4th-order central difference of f along one phase-space coordinate.
double pd4(const PhaseFn& f, PhaseState2D s, double PhaseState2D::*m, double h) {
    auto at = [&](double d) {
        PhaseState2D q = s;
        q.*m += d;
        return f(q);
    };
    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

} // namespace

double poisson_bracket(const PhaseFn& f, const PhaseFn& g, const PhaseState2D& s, double h) {
    const double fx = pd4(f, s, &PhaseState2D::x, h), fpx = pd4(f, s, &PhaseState2D::px, h);
    const double fy = pd4(f, s, &PhaseState2D::y, h), fpy = pd4(f, s, &PhaseState2D::py, h);
    const double gx = pd4(g, s, &PhaseState2D::x, h), gpx = pd4(g, s, &PhaseState2D::px, h);
    const double gy = pd4(g, s, &PhaseState2D::y, h), gpy = pd4(g, s, &PhaseState2D::py, h);
    return fx * gpx - fpx * gx + fy * gpy - fpy * gy;
}

} // namespace oscillab
