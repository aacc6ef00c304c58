#include "oscillab/separability.hpp"

#include <cmath>

namespace oscillab {

const char* to_string(Family f) {
    switch (f) {
        case Family::zx: return "zx";
        case Family::zy: return "zy";
        case Family::polar: return "polar";
        case Family::superseparable: return "superseparable";
    }
    return "unknown";
}

double to_zx(double x, double y, double lambda) {
    const double d = 1.0 + lambda * y * y;
    if (d <= 0.0) throw DomainError("to_zx: 1 + lambda y^2 <= 0");
    return x / std::sqrt(d);
}

double zx_inverse(double zx, double y, double lambda) {
    const double d = 1.0 + lambda * y * y;
    if (d <= 0.0) throw DomainError("zx_inverse: 1 + lambda y^2 <= 0");
    return zx * std::sqrt(d);
}

double to_zy(double x, double y, double lambda) {
    const double d = 1.0 + lambda * x * x;
    if (d <= 0.0) throw DomainError("to_zy: 1 + lambda x^2 <= 0");
    return y / std::sqrt(d);
}

double zy_inverse(double x, double zy, double lambda) {
    const double d = 1.0 + lambda * x * x;
    if (d <= 0.0) throw DomainError("zy_inverse: 1 + lambda x^2 <= 0");
    return zy * std::sqrt(d);
}

Polar to_polar(double x, double y) {
    if (x == 0.0 && y == 0.0)
        throw AngleUndefinedError("to_polar: angle undefined at the origin");
    return {std::hypot(x, y), std::atan2(y, x)};
}

std::array<double, 2> polar_inverse(double r, double phi) {
    return {r * std::cos(phi), r * std::sin(phi)};
}

PolarMomenta polar_momenta(const PhaseState2D& s) {
    const double r = std::hypot(s.x, s.y);
    if (r == 0.0)
        throw AngleUndefinedError("polar_momenta: chart undefined at the origin");
    return {(s.x * s.px + s.y * s.py) / r, s.x * s.py - s.y * s.px};
}

double SeparablePotential::value(double x, double y, double lambda) const {
    switch (family) {
        case Family::zx:
            return fn_eval(W1, to_zx(x, y, lambda)) / (1.0 + lambda * y * y) + fn_eval(W2, y);
        case Family::zy:
            return fn_eval(W1, x) + fn_eval(W2, to_zy(x, y, lambda)) / (1.0 + lambda * x * x);
        case Family::polar: {
            const Polar rp = to_polar(x, y);
            return fn_eval(W1, rp.r) + fn_eval(W2, rp.phi) / (rp.r * rp.r);
        }
        case Family::superseparable: {
            const double r2 = x * x + y * y;
            return r2 / (1.0 + lambda * r2);
        }
    }
    throw ArgumentError("SeparablePotential::value: bad family");
}

Potential2D SeparablePotential::as_potential2d(double lambda) const {
    SeparablePotential pot = *this;
    Potential2D out;
    out.value = [pot, lambda](double x, double y) { return pot.value(x, y, lambda); };
    switch (family) {
        case Family::zx:
            out.grad = [pot, lambda](double x, double y) {
                const double dy2 = 1.0 + lambda * y * y;
                const double zx = to_zx(x, y, lambda);
                const double w1 = fn_eval(pot.W1, zx), dw1 = fn_deriv(pot.W1, zx);
                const double gx = dw1 / (dy2 * std::sqrt(dy2));
                const double gy = -lambda * y * (dw1 * zx + 2.0 * w1) / (dy2 * dy2) +
                                  fn_deriv(pot.W2, y);
                return std::array<double, 2>{gx, gy};
            };
            break;
        case Family::zy:
            out.grad = [pot, lambda](double x, double y) {
                const double dx2 = 1.0 + lambda * x * x;
                const double zy = to_zy(x, y, lambda);
                const double w2 = fn_eval(pot.W2, zy), dw2 = fn_deriv(pot.W2, zy);
                const double gy = dw2 / (dx2 * std::sqrt(dx2));
                const double gx = -lambda * x * (dw2 * zy + 2.0 * w2) / (dx2 * dx2) +
                                  fn_deriv(pot.W1, x);
                return std::array<double, 2>{gx, gy};
            };
            break;
        case Family::polar:
            out.grad = [pot](double x, double y) {
                const Polar rp = to_polar(x, y);
                const double r = rp.r, r2 = r * r;
                const double dF = fn_deriv(pot.W1, r);
                const double G = fn_eval(pot.W2, rp.phi), dG = fn_deriv(pot.W2, rp.phi);
                // grad of F(r): dF * (x,y)/r; grad of G(phi)/r^2 with
                // dphi = (-y, x)/r^2.
                const double gx = dF * x / r + (-dG * y - 2.0 * G * x) / (r2 * r2);
                const double gy = dF * y / r + (dG * x - 2.0 * G * y) / (r2 * r2);
                return std::array<double, 2>{gx, gy};
            };
            break;
        case Family::superseparable:
            out = potential_superseparable(lambda);
            break;
    }
    return out;
}

SeparablePotential zx_potential(Fn1D W1, Fn1D W2) {
    return {Family::zx, std::move(W1), std::move(W2)};
}

SeparablePotential zy_potential(Fn1D W1, Fn1D W2) {
    return {Family::zy, std::move(W1), std::move(W2)};
}

SeparablePotential polar_potential(Fn1D F, Fn1D G) {
    return {Family::polar, std::move(F), std::move(G)};
}

SeparablePotential superseparable_potential() {
    return {Family::superseparable, {}, {}};
}

SeparablePotential superseparable_as(Family f, double lambda) {
    // u^2 / (1 + lambda u^2), the shape of every component of the identity
    const Fn1D deformed_sq{
        [lambda](double u) { return u * u / (1.0 + lambda * u * u); },
        [lambda](double u) {
            const double d = 1.0 + lambda * u * u;
            return 2.0 * u / (d * d);
        }};
    switch (f) {
        case Family::zx: return zx_potential(deformed_sq, deformed_sq);
        case Family::zy: return zy_potential(deformed_sq, deformed_sq);
        case Family::polar: return polar_potential(deformed_sq, fn_const(0.0));
        case Family::superseparable: return superseparable_potential();
    }
    throw ArgumentError("superseparable_as: bad family");
}

double superseparable_V(double x, double y, const DeformParams& p) {
    const double r2 = x * x + y * y;
    if (!validate_domain(r2, p.lambda))
        throw DomainError("superseparable_V: point outside the admissible region");
    return 0.5 * p.alpha * p.alpha * r2 / (1.0 + p.lambda * r2);
}

double superseparable_identity_residual(double x, double y, const DeformParams& p) {
    if (!validate_domain(x * x + y * y, p.lambda))
        throw DomainError("superseparable_identity_residual: point outside the admissible region");
    if (x == 0.0 && y == 0.0)
        throw AngleUndefinedError("superseparable_identity_residual: polar chart undefined at origin");
    const double a2h = 0.5 * p.alpha * p.alpha;
    const double lam = p.lambda;

    const double zx = to_zx(x, y, lam);
    const double f_zx = a2h / (1.0 + lam * y * y) *
                        (zx * zx / (1.0 + lam * zx * zx) + y * y);
    const double zy = to_zy(x, y, lam);
    const double f_zy = a2h / (1.0 + lam * x * x) *
                        (x * x + zy * zy / (1.0 + lam * zy * zy));
    const double r2 = x * x + y * y;
    const double f_polar = a2h * r2 / (1.0 + lam * r2);

    return std::max({std::fabs(f_zx - f_zy), std::fabs(f_zx - f_polar),
                     std::fabs(f_zy - f_polar)});
}

QuadraticIntegrals quadratic_integrals(Family f, const PhaseState2D& s, const DeformParams& p,
                                       const SeparablePotential& pot) {
    if (pot.family != f)
        throw FamilyMismatchError("quadratic_integrals: potential family does not match chart");
    if (!validate_domain(s, p))
        throw DomainError("quadratic_integrals: state outside the admissible region");
    const double lam = p.lambda, a2 = p.alpha * p.alpha;
    const double r2 = s.x * s.x + s.y * s.y;
    const double pref = 1.0 + lam * r2;
    const double J = s.x * s.py - s.y * s.px;

    switch (f) {
        case Family::zx: {
            const double zx = to_zx(s.x, s.y, lam);
            const double W1 = fn_eval(pot.W1, zx), W2 = fn_eval(pot.W2, s.y);
            const double I1 = pref * s.px * s.px + a2 * W1;
            const double I2 = pref * s.py * s.py - lam * J * J +
                              a2 * (W2 - lam * s.y * s.y / (1.0 + lam * s.y * s.y) * W1);
            return {I1, I2};
        }
        case Family::zy: {
            // symmetric counterpart of the zx family formulas
            const double zy = to_zy(s.x, s.y, lam);
            const double W1 = fn_eval(pot.W1, s.x), W2 = fn_eval(pot.W2, zy);
            const double I1 = pref * s.px * s.px - lam * J * J +
                              a2 * (W1 - lam * s.x * s.x / (1.0 + lam * s.x * s.x) * W2);
            const double I2 = pref * s.py * s.py + a2 * W2;
            return {I1, I2};
        }
        case Family::polar: {
            const Polar rp = to_polar(s.x, s.y);
            const PolarMomenta pm = polar_momenta(s);
            const double F = fn_eval(pot.W1, rp.r), G = fn_eval(pot.W2, rp.phi);
            const double c = (1.0 - rp.r * rp.r) / (rp.r * rp.r);
            const double I1 = pref * pm.pr * pm.pr + c * pm.pphi * pm.pphi +
                              a2 * (F + c * G);
            const double I2 = pm.pphi * pm.pphi + a2 * G;
            return {I1, I2};
        }
        case Family::superseparable:
            throw FamilyMismatchError("quadratic_integrals: pick a chart family for the "
                                      "super-separable potential (superseparable_as)");
    }
    throw ArgumentError("quadratic_integrals: bad family");
}

double hj_residual(Family f, const PhaseState2D& s, const DeformParams& p,
                   const SeparablePotential& pot, double E) {
    if (pot.family != f)
        throw FamilyMismatchError("hj_residual: potential family does not match chart");
    if (!validate_domain(s, p))
        throw DomainError("hj_residual: state outside the admissible region");
    const double lam = p.lambda, a2 = p.alpha * p.alpha;
    const double V = pot.value(s.x, s.y, lam);

    switch (f) {
        case Family::zx: {
            // chart momenta: p_zx = sqrt(1+lambda y^2) px,
            //                p_y' = py + lambda x y px / (1+lambda y^2)
            const double dy2 = 1.0 + lam * s.y * s.y;
            const double zx = to_zx(s.x, s.y, lam);
            const double pzx = std::sqrt(dy2) * s.px;
            const double pyp = s.py + lam * s.x * s.y * s.px / dy2;
            const double lhs = ((1.0 + lam * zx * zx) * pzx * pzx + dy2 * dy2 * pyp * pyp) / dy2 +
                               a2 * V;
            return std::fabs(lhs - 2.0 * E);
        }
        case Family::zy: {
            const double dx2 = 1.0 + lam * s.x * s.x;
            const double zy = to_zy(s.x, s.y, lam);
            const double pzy = std::sqrt(dx2) * s.py;
            const double pxp = s.px + lam * s.x * s.y * s.py / dx2;
            const double lhs = ((1.0 + lam * zy * zy) * pzy * pzy + dx2 * dx2 * pxp * pxp) / dx2 +
                               a2 * V;
            return std::fabs(lhs - 2.0 * E);
        }
        case Family::polar: {
            const Polar rp = to_polar(s.x, s.y);
            const PolarMomenta pm = polar_momenta(s);
            const double lhs = (1.0 + lam * rp.r * rp.r) * pm.pr * pm.pr +
                               pm.pphi * pm.pphi / (rp.r * rp.r) + a2 * V;
            return std::fabs(lhs - 2.0 * E);
        }
        case Family::superseparable:
            throw FamilyMismatchError("hj_residual: pick a chart family");
    }
    throw ArgumentError("hj_residual: bad family");
}

} // namespace oscillab
