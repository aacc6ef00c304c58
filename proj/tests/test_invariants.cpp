#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscillab/invariants.hpp"
#include "oscillab/rng.hpp"

using namespace oscillab;

namespace {

Trajectory run(const SystemRHS& rhs, std::span<const double> y0, double t1,
               double tol = 1e-10, double sample_dt = 0.0) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    cfg.sample_dt = sample_dt;
    return integrate_adaptive(rhs, 0.0, y0, t1, cfg);
}

} // namespace

TEST_SUITE("invariants") {

TEST_CASE("K functions reduce to the undeformed forms at lambda = 0") {
    const DeformParams p{0.0, 1.3};
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        const State2D s{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                        rng.uniform(-1, 1)};
        const KPair k = eval_K(s, p);
        CHECK(k.K1.real() == doctest::Approx(s.vx));
        CHECK(k.K1.imag() == doctest::Approx(p.alpha * s.x));
        CHECK(k.K2.real() == doctest::Approx(s.vy));
        CHECK(k.K2.imag() == doctest::Approx(p.alpha * s.y));
    }
}

TEST_CASE("I1 I2 I3 hand values") {
    const I123 iv = eval_I123({1.0, 0.0, 0.0, 1.0}, {0.0, 1.0});
    CHECK(iv.I1 == doctest::Approx(1.0));
    CHECK(iv.I2 == doctest::Approx(1.0));
    CHECK(iv.I3 == doctest::Approx(1.0));

    const I123 rest = eval_I123({0.0, 0.0, 0.0, 0.0}, {0.5, 1.0});
    CHECK(rest.I1 == 0.0);
    CHECK(rest.I2 == 0.0);
    CHECK(rest.I3 == 0.0);

    CHECK_THROWS_AS(eval_I123({1.5, 0.0, 0.0, 0.0}, {-1.0, 1.0}), DomainError);
}

TEST_CASE("I3 equals alpha J identically") {
    Rng rng(29);
    for (double lam : {-0.5, 0.0, 0.8}) {
        const DeformParams p{lam, 1.7};
        for (int i = 0; i < 300; ++i) {
            const double rmax = lam < 0 ? 0.9 : 1.5;
            const State2D s{rng.uniform(-rmax, rmax) * 0.7, rng.uniform(-rmax, rmax) * 0.7,
                            rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const I123 iv = eval_I123(s, p);
            CHECK(iv.I3 == doctest::Approx(p.alpha * (s.x * s.vy - s.y * s.vx)).epsilon(1e-14));
        }
    }
}

TEST_CASE("I1 I2 I3 drift along ML-2D trajectories") {
    for (double lam : {-0.5, 0.5}) {
        const DeformParams p{lam, 1.0};
        const SystemRHS rhs = make_ml2d(p, potential_superseparable(lam));
        const double y0[4] = {0.3, 0.1, 0.4, -0.2};
        const Trajectory tr = run(rhs, y0, 100.0, 1e-10, 0.05);
        for (int which = 0; which < 3; ++which) {
            const InvariantEvaluator inv{
                "I", [p, which](std::span<const double> y) {
                    const I123 iv = eval_I123(
                        inverse_legendre_2d(PhaseState2D{y[0], y[1], y[2], y[3]}, p.lambda), p);
                    return Complex{which == 0 ? iv.I1 : which == 1 ? iv.I2 : iv.I3, 0.0};
                }};
            const InvariantReport rep = drift_report(tr, inv);
            CHECK(rep.max_rel_drift < 1e-9);
            CHECK(rep.error_samples.empty());
        }
    }
}

TEST_CASE("negative control: mismatched lambda shows large drift") {
    const DeformParams p{0.5, 1.0};
    const SystemRHS rhs = make_ml2d(p, potential_superseparable(p.lambda));
    const double y0[4] = {0.3, 0.1, 0.4, -0.2};
    const Trajectory tr = run(rhs, y0, 100.0, 1e-10, 0.05);
    const DeformParams wrong{0.55, 1.0};   // lambda off by 10%
    const InvariantEvaluator inv{"I1_wrong", [p, wrong](std::span<const double> y) {
                                     const State2D v = inverse_legendre_2d(
                                         PhaseState2D{y[0], y[1], y[2], y[3]}, p.lambda);
                                     return Complex{eval_I123(v, wrong).I1, 0.0};
                                 }};
    CHECK(drift_report(tr, inv).max_rel_drift > 1e-3);
}

TEST_CASE("K evolution law dK/dt = i alpha K / (1 + lambda r^2)") {
    const DeformParams p{0.5, 1.0};
    const SystemRHS rhs = make_ml2d(p, potential_superseparable(p.lambda));
    const double y0[4] = {0.4, 0.0, 0.0, 0.5};
    const double T = 2.0 * std::numbers::pi;
    const double dt = T / 4096.0;
    const Trajectory tr = run(rhs, y0, T, 1e-12, dt);
    REQUIRE(tr.size() > 400);

    auto K1_at = [&](std::size_t i) {
        const auto y = tr.state(i);
        return eval_K(inverse_legendre_2d(PhaseState2D{y[0], y[1], y[2], y[3]}, p.lambda), p).K1;
    };
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < tr.size(); ++i) {
        const Complex dK = (-K1_at(i + 2) + 8.0 * K1_at(i + 1) - 8.0 * K1_at(i - 1) +
                            K1_at(i - 2)) /
                           (12.0 * dt);
        const auto y = tr.state(i);
        const double r2 = y[0] * y[0] + y[1] * y[1];
        const Complex rhs_law = Complex{0.0, p.alpha / (1.0 + p.lambda * r2)} * K1_at(i);
        worst = std::max(worst, std::abs(dK - rhs_law) / std::abs(rhs_law));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("harmonic J hand values and drift") {
    CHECK(eval_harmonic_J({1.0, 1.0, 0.0, 0.0}, 1, 1, 1.0).real() == doctest::Approx(1.0));
    CHECK(eval_harmonic_J({1.0, 1.0, 0.0, 0.0}, 1, 1, 1.0).imag() == doctest::Approx(0.0));
    CHECK(std::abs(eval_harmonic_J({0.0, 0.0, 0.0, 0.0}, 2, 3, 1.0)) == 0.0);

    const SystemRHS rhs = make_harmonic2d(2, 3, 1.0);
    const double y0[4] = {1.0, 0.3, 0.2, -0.4};
    const double T = 50.0 * 2.0 * std::numbers::pi;
    const Trajectory tr = run(rhs, y0, T, 1e-13, 0.1);
    const InvariantEvaluator invJ{"J", [](std::span<const double> y) {
                                      return eval_harmonic_J(PhaseState2D{y[0], y[1], y[2], y[3]},
                                                             2, 3, 1.0);
                                  }};
    CHECK(drift_report(tr, invJ).max_rel_drift < 1e-10);

    // Ex, Ey individually constant
    for (int c = 0; c < 2; ++c) {
        const InvariantEvaluator invE{"E", [c](std::span<const double> y) {
                                          const double w = (c == 0 ? 2.0 : 3.0);
                                          const double q = c == 0 ? y[0] : y[1];
                                          const double pm = c == 0 ? y[2] : y[3];
                                          return Complex{0.5 * (pm * pm + w * w * q * q), 0.0};
                                      }};
        CHECK(drift_report(tr, invE).max_rel_drift < 1e-10);
    }
}

TEST_CASE("nonstd integrals hand values and errors") {
    const NonstdIntegrals ni = eval_nonstd_integrals({1.0, 1.0, 1.0, 1.0}, 1.0, 1.0);
    CHECK(ni.I3 == doctest::Approx(0.0));
    CHECK_THROWS_AS(eval_nonstd_integrals({1.0, 1.0, 1.0, -1.0}, 1.0, 1.0),
                    SingularLevelSetError);
}

TEST_CASE("nonstd integrals drift along the free separable flow") {
    const double k1 = 0.2, k2 = 0.3;
    const SystemRHS rhs = make_nonstd2d(make_nonstd(k1, k2, 0.0, 1, 1));
    const double y0[4] = {1.0, 0.5, 1.0, 0.8};   // E_L < 0 in both channels
    const Trajectory tr = run(rhs, y0, 50.0, 1e-11, 0.02);
    for (int which = 0; which < 4; ++which) {
        const InvariantEvaluator inv{"NI", [k1, k2, which](std::span<const double> y) {
                                         const NonstdIntegrals ni = eval_nonstd_integrals(
                                             State2D{y[0], y[1], y[2], y[3]}, k1, k2);
                                         const double v = which == 0   ? ni.E1
                                                          : which == 1 ? ni.E2
                                                          : which == 2 ? ni.I3
                                                                       : ni.I4;
                                         return Complex{v, 0.0};
                                     }};
        CHECK(drift_report(tr, inv).max_rel_drift < 1e-9);
    }
}

TEST_CASE("nonstd K: k -> 0 algebra and zero state") {
    const NonstdParams p0 = make_nonstd(0.0, 0.0, 1.0, 1, 2);
    const State2D s{0.7, -0.3, 0.2, 0.5};
    const Complex K = eval_nonstd_K(s, p0);
    const Complex K1{(s.vx + 0.0) / 1.0, 1.0 * s.x / 1.0};
    const Complex K2{s.vy / 4.0, 2.0 * s.y / 4.0};
    CHECK(std::abs(K - std::pow(K1, 2) * std::conj(K2)) < 1e-14);

    const NonstdParams pz = make_nonstd(0.3, 0.3, 1.0, 1, 2);
    CHECK(std::abs(eval_nonstd_K({0.0, 0.0, 0.0, 0.0}, pz)) == 0.0);
}

TEST_CASE("nonstd K drift along the rational flow") {
    const NonstdParams p = make_nonstd(0.1, 0.1, 1.0, 1, 2);
    const SystemRHS rhs = make_nonstd2d(p);
    const double y0[4] = {0.5, 0.3, 0.0, 0.0};
    const Trajectory tr = run(rhs, y0, 50.0, 1e-11, 0.02);
    const InvariantEvaluator inv{"K12", [p](std::span<const double> y) {
                                     return eval_nonstd_K(State2D{y[0], y[1], y[2], y[3]}, p);
                                 }};
    CHECK(drift_report(tr, inv).max_rel_drift < 1e-8);
}

TEST_CASE("drift report basics") {
    Trajectory tr;
    tr.dim = 1;
    for (int i = 0; i < 10; ++i) {
        tr.times.push_back(i);
        tr.data.push_back(i * i);
    }
    const InvariantEvaluator constant{"c", [](std::span<const double>) {
                                          return Complex{2.5, 0.0};
                                      }};
    const InvariantReport rep = drift_report(tr, constant);
    CHECK(rep.max_abs_drift == 0.0);
    CHECK(rep.max_rel_drift == 0.0);
    CHECK(rep.samples == 10);

    // evaluator failures are recorded with their sample index, not thrown
    const InvariantEvaluator flaky{"f", [](std::span<const double> y) {
                                       if (y[0] > 50.0)
                                           throw SingularLevelSetError("boom");
                                       return Complex{1.0, 0.0};
                                   }};
    const InvariantReport rep2 = drift_report(tr, flaky);
    CHECK(rep2.samples == 8);
    REQUIRE(rep2.error_samples.size() == 2);
    CHECK(rep2.error_samples[0] == 8);
    CHECK(rep2.error_samples[1] == 9);

    // relative drift uses the floor max(|initial|, 1e-12)
    const InvariantEvaluator near_zero{"z", [](std::span<const double> y) {
                                           return Complex{y[0] * 1e-15, 0.0};
                                       }};
    const InvariantReport rep3 = drift_report(tr, near_zero);
    CHECK(rep3.max_rel_drift == doctest::Approx(rep3.max_abs_drift / 1e-12));

    Trajectory empty;
    CHECK_THROWS_AS(drift_report(empty, constant), ArgumentError);
}

TEST_CASE("lie bracket residuals") {
    // translations commute at lambda = 0
    const BracketResiduals flat = lie_bracket_residual(0.0, 0.4, -1.2);
    CHECK(flat.max_norm() == 0.0);

    CHECK(lie_bracket_residual(0.5, 1.0, 1.0).max_norm() < 1e-12);
    CHECK(lie_bracket_residual(-0.5, 0.5, 0.5).max_norm() < 1e-12);
    CHECK_THROWS_AS(lie_bracket_residual(-1.0, 1.0, 1.0), DomainError);

    Rng rng(31);
    for (double lam : {-0.5, 0.0, 0.5, 2.0}) {
        for (int i = 0; i < 100; ++i) {
            const double rmax = lam < 0 ? 0.9 / std::sqrt(-lam) : 2.0;
            double x, y;
            do {
                x = rng.uniform(-rmax, rmax);
                y = rng.uniform(-rmax, rmax);
            } while (x * x + y * y >= rmax * rmax);
            CHECK(lie_bracket_residual(lam, x, y).max_norm() < 1e-12);
        }
    }
}

TEST_CASE("poisson bracket") {
    const PhaseState2D s{0.3, -0.8, 1.1, 0.4};
    const PhaseFn X = [](const PhaseState2D& q) { return q.x; };
    const PhaseFn Px = [](const PhaseState2D& q) { return q.px; };
    CHECK(poisson_bracket(X, Px, s, 1e-2) == doctest::Approx(1.0).epsilon(1e-10));

    // {Ex, Ey} = 0 for the 2D harmonic oscillator
    const PhaseFn Ex = [](const PhaseState2D& q) { return 0.5 * (q.px * q.px + q.x * q.x); };
    const PhaseFn Ey = [](const PhaseState2D& q) { return 0.5 * (q.py * q.py + q.y * q.y); };
    CHECK(std::fabs(poisson_bracket(Ex, Ey, s, 1e-2)) < 1e-10);
}

} // TEST_SUITE
