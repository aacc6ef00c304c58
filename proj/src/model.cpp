#include "oscillab/model.hpp"

#include <numeric>

namespace oscillab {

DeformParams make_deform(double lambda, double alpha) {
    if (!std::isfinite(lambda) || !std::isfinite(alpha))
        throw ArgumentError("DeformParams: lambda and alpha must be finite");
    if (alpha <= 0.0)
        throw ArgumentError("DeformParams: alpha must be positive");
    return DeformParams{lambda, alpha};
}

bool validate_domain(double rsq, double lambda) noexcept {
    return 1.0 + lambda * rsq > 0.0;
}

bool validate_domain(const State1D& s, const DeformParams& p) noexcept {
    return validate_domain(s.x * s.x, p.lambda);
}

bool validate_domain(const State2D& s, const DeformParams& p) noexcept {
    return validate_domain(s.x * s.x + s.y * s.y, p.lambda);
}

bool validate_domain(const PhaseState2D& s, const DeformParams& p) noexcept {
    return validate_domain(s.x * s.x + s.y * s.y, p.lambda);
}

State1D checked_state(double x, double v, const DeformParams& p) {
    State1D s{x, v};
    if (!validate_domain(s, p))
        throw DomainError("State1D outside the admissible region 1 + lambda*x^2 > 0");
    return s;
}

State2D checked_state(double x, double y, double vx, double vy, const DeformParams& p) {
    State2D s{x, y, vx, vy};
    if (!validate_domain(s, p))
        throw DomainError("State2D outside the admissible region 1 + lambda*r^2 > 0");
    return s;
}

PhaseState2D checked_phase(double x, double y, double px, double py, const DeformParams& p) {
    PhaseState2D s{x, y, px, py};
    if (!validate_domain(s, p))
        throw DomainError("PhaseState2D outside the admissible region 1 + lambda*r^2 > 0");
    return s;
}

NonstdParams make_nonstd(double k1, double k2, double omega0, int n1, int n2) {
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(omega0))
        throw ArgumentError("NonstdParams: couplings and omega0 must be finite");
    if (omega0 < 0.0)
        throw ArgumentError("NonstdParams: omega0 must be >= 0");
    if (n1 <= 0 || n2 <= 0)
        throw ArgumentError("NonstdParams: n1, n2 must be positive integers");
    // only the frequency ratio matters for the constant of motion: reduce to coprime
    // form and absorb the common factor into omega0.
    const int g = std::gcd(n1, n2);
    return NonstdParams{k1, k2, omega0 * g, n1 / g, n2 / g};
}

} // namespace oscillab
