// Acceptance suite: runs every top-level claim at its stated tolerance and
// prints one pass/fail line per criterion.  The oscillab binary path may be
// passed as argv[1] (used by the determinism criterion; discovered from
// OSCILLAB_BIN otherwise).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "oscillab/integrate.hpp"
#include "oscillab/invariants.hpp"
#include "oscillab/isochrony.hpp"
#include "oscillab/quantum.hpp"
#include "oscillab/rng.hpp"
#include "oscillab/separability.hpp"

using namespace oscillab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %02d %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

IntegratorConfig tight(double tol, double sample_dt = 0.0) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    cfg.sample_dt = sample_dt;
    return cfg;
}

// --- 1: amplitude-frequency law --------------------------------------------

void criterion_1() {
    double worst = 0.0, worst_time = 0.0;
    bool pass = true;
    for (double lam : {-0.5, 0.5, 3.0}) {
        const auto t0 = Clock::now();
        const DeformParams p{lam, 1.0};
        const double A = lam < 0 ? 0.8 : 1.0;
        const double T_expected = 2.0 * std::numbers::pi * std::sqrt(1.0 + lam * A * A);
        const SystemRHS rhs = make_ml1d(p);
        const double y0[2] = {A, 0.0};   // release from rest
        const double T = measure_period(rhs, 0.0, y0, 4.6 * T_expected, tight(1e-11), 0);
        worst = std::max(worst, std::fabs(T - T_expected) / T_expected);
        worst_time = std::max(worst_time, seconds_since(t0));
    }
    pass = worst < 1e-6 && worst_time < 1.0;
    report(1, "amplitude-frequency law", pass,
           fmt("worst rel err %.2e (tol 1e-6), slowest case %.2f s", worst, worst_time));
}

// --- 2: ML-2D superintegrability --------------------------------------------

void criterion_2() {
    double worst = 0.0, control = 1e9;
    for (double lam : {-0.5, 0.5}) {
        const DeformParams p{lam, 1.0};
        const SystemRHS rhs = make_ml2d(p, potential_superseparable(lam));
        const double y0[4] = {0.3, 0.1, 0.4, -0.2};
        const Trajectory tr = integrate_adaptive(rhs, 0.0, y0, 100.0, tight(1e-10, 0.05));
        for (int which = 0; which < 3; ++which) {
            const InvariantEvaluator inv{
                "I", [p, which](std::span<const double> y) {
                    const I123 iv = eval_I123(
                        inverse_legendre_2d(PhaseState2D{y[0], y[1], y[2], y[3]}, p.lambda), p);
                    return Complex{which == 0 ? iv.I1 : which == 1 ? iv.I2 : iv.I3, 0.0};
                }};
            worst = std::max(worst, drift_report(tr, inv).max_rel_drift);
        }
        const DeformParams wrong{lam * 1.1, 1.0};
        const InvariantEvaluator bad{"bad", [p, wrong](std::span<const double> y) {
                                         const State2D v = inverse_legendre_2d(
                                             PhaseState2D{y[0], y[1], y[2], y[3]}, p.lambda);
                                         return Complex{eval_I123(v, wrong).I1, 0.0};
                                     }};
        control = std::min(control, drift_report(tr, bad).max_rel_drift);
    }
    report(2, "ML-2D superintegrability", worst < 1e-8 && control > 1e-3,
           fmt("worst drift %.2e (tol 1e-8), negative control %.2e (> 1e-3)", worst, control));
}

// --- 3: K evolution law ------------------------------------------------------

void criterion_3() {
    const DeformParams p{0.5, 1.0};
    const SystemRHS rhs = make_ml2d(p, potential_superseparable(p.lambda));
    const double y0[4] = {0.4, 0.0, 0.0, 0.5};
    const double T = 2.0 * std::numbers::pi;
    const double dt = T / 4096.0;
    const Trajectory tr = integrate_adaptive(rhs, 0.0, y0, T, tight(1e-12, dt));
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
        const Complex law = Complex{0.0, p.alpha / (1.0 + p.lambda * r2)} * K1_at(i);
        worst = std::max(worst, std::abs(dK - law) / std::abs(law));
    }
    report(3, "K evolution law", worst < 1e-6, fmt("worst pointwise rel err %.2e (tol 1e-6)", worst));
}

// --- 4: super-separability ---------------------------------------------------

void criterion_4() {
    Rng rng(2024);
    double worst_identity = 0.0;
    for (double lam : {-0.9, -0.5, 0.0, 0.5, 3.0}) {
        const DeformParams p{lam, 1.0};
        const double rmax = lam < 0 ? 0.95 / std::sqrt(-lam) : 2.0;
        for (int i = 0; i < 10000; ++i) {
            double x, y;
            do {
                x = rng.uniform(-rmax, rmax);
                y = rng.uniform(-rmax, rmax);
            } while (x * x + y * y >= rmax * rmax || (x == 0.0 && y == 0.0));
            worst_identity = std::max(worst_identity, superseparable_identity_residual(x, y, p));
        }
    }

    const DeformParams p{0.5, 1.0};
    double worst_drift = 0.0, worst_sum = 0.0;
    for (Family f : {Family::zx, Family::zy, Family::polar}) {
        SeparablePotential pot;
        if (f == Family::zx)
            pot = zx_potential(fn_quadratic(1.0), fn_power(0.5, 4));
        else if (f == Family::zy)
            pot = zy_potential(fn_power(0.5, 4), fn_quadratic(1.0));
        else
            pot = polar_potential(fn_quadratic(1.0),
                                  Fn1D{[](double u) { return 0.3 * std::cos(u) * std::cos(u); },
                                       [](double u) { return -0.3 * std::sin(2.0 * u); }});
        const Potential2D V = pot.as_potential2d(p.lambda);
        const SystemRHS rhs = make_ml2d(p, V);
        const double y0[4] = {0.8, 0.2, 0.1, 0.6};
        const Trajectory tr = integrate_adaptive(rhs, 0.0, y0, 50.0, tight(1e-10, 0.05));
        for (int which = 0; which < 2; ++which) {
            const InvariantEvaluator inv{
                "Q", [&, which](std::span<const double> y) {
                    const QuadraticIntegrals qi =
                        quadratic_integrals(f, PhaseState2D{y[0], y[1], y[2], y[3]}, p, pot);
                    return Complex{which == 0 ? qi.I1 : qi.I2, 0.0};
                }};
            worst_drift = std::max(worst_drift, drift_report(tr, inv).max_rel_drift);
        }
        for (int i = 0; i < 500; ++i) {
            const PhaseState2D s{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                 rng.uniform(-1, 1)};
            if (s.x == 0.0 && s.y == 0.0) continue;
            const QuadraticIntegrals qi = quadratic_integrals(f, s, p, pot);
            const double H = ml2d_hamiltonian(s, p, V);
            worst_sum = std::max(worst_sum, std::fabs(qi.I1 + qi.I2 - 2.0 * H));
        }
    }
    const bool pass = worst_identity < 1e-13 && worst_drift < 1e-8 && worst_sum < 1e-12;
    report(4, "super-separability", pass,
           fmt("identity %.2e (tol 1e-13), drift %.2e (tol 1e-8)", worst_identity, worst_drift) +
               fmt(", I1+I2-2H %.2e (tol 1e-12)", worst_sum));
}

// --- 5: Lie algebra ----------------------------------------------------------

void criterion_5() {
    Rng rng(77);
    double worst = 0.0;
    for (double lam : {-0.5, 0.0, 0.5, 2.0}) {
        const double rmax = lam < 0 ? 0.9 / std::sqrt(-lam) : 2.0;
        for (int i = 0; i < 100; ++i) {
            double x, y;
            do {
                x = rng.uniform(-rmax, rmax);
                y = rng.uniform(-rmax, rmax);
            } while (x * x + y * y >= rmax * rmax);
            worst = std::max(worst, lie_bracket_residual(lam, x, y).max_norm());
        }
    }
    report(5, "Lie algebra closure", worst < 1e-12, fmt("worst residual %.2e (tol 1e-12)", worst));
}

// --- 6: quantum spectrum -----------------------------------------------------

void criterion_6() {
    bool pass = true;
    std::string detail;
    double worst_time = 0.0;
    struct Case {
        double lambda, beta;
        int levels;
    };
    for (const Case c : {Case{0.0, 1.0, 5}, Case{-1.0, 2.0, 5}, Case{1.0, 3.0, 3}}) {
        const auto t0 = Clock::now();
        const QuantumParams p = quantum_from_beta(c.beta, c.lambda);
        const auto ladder = ladder_spectrum(p, c.levels);
        const auto coarse = eig_lowest(discretize_hamiltonian(p, {4000, 10.0}), c.levels);
        const auto fine = eig_lowest(discretize_hamiltonian(p, {8000, 10.0}), c.levels);
        double worst_err = 0.0, worst_order = 10.0;
        for (int n = 0; n < c.levels; ++n) {
            const double ec = std::fabs(coarse[n] - ladder[n]);
            const double ef = std::fabs(fine[n] - ladder[n]);
            worst_err = std::max(worst_err, ec);
            worst_order = std::min(worst_order,
                                   std::log2(ec / ef) / std::log2(8001.0 / 4001.0));
        }
        worst_time = std::max(worst_time, seconds_since(t0));
        if (!(worst_err < 1e-3 && worst_order > 1.8)) pass = false;
        detail += fmt("err %.1e ord %.2f; ", worst_err, worst_order);
    }
    pass = pass && worst_time < 10.0;
    report(6, "quantum ladder vs diagonalization", pass,
           detail + fmt("(tol 1e-3, order >= 1.8), slowest %.1f s", worst_time));
}

// --- 7: ground state ---------------------------------------------------------

void criterion_7() {
    const QuantumParams p = quantum_from_beta(2.0, -1.0);
    const GridSpec g{4000, 10.0};
    const SymTridiag m = discretize_hamiltonian(p, g);
    const QGrid grid = make_grid(p, g);
    std::vector<double> u(grid.q.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = x_of_q(grid.q[i], p.lambda);
        u[i] = 1.0 - x * x;
    }
    double res2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double hu = m.diag[i] * u[i];
        if (i > 0) hu += m.off[i - 1] * u[i - 1];
        if (i + 1 < u.size()) hu += m.off[i] * u[i + 1];
        const double r = hu - 0.5 * p.beta * u[i];
        res2 += r * r;
        norm2 += u[i] * u[i];
    }
    const double res = std::sqrt(res2 / norm2);
    report(7, "ground state eigen-residual", res < 1e-5, fmt("residual %.2e (tol 1e-5)", res));
}

// --- 8: shape invariance -----------------------------------------------------

void criterion_8() {
    const std::function<double(double)> gaussian = [](double q) { return std::exp(-0.5 * q * q); };
    const std::function<double(double)> odd_gaussian = [](double q) {
        return q * std::exp(-0.7 * q * q);
    };
    const std::function<double(double)> cos4 = [](double q) {
        const double c = std::cos(q);
        return c * c * c * c;
    };
    // the superpotential diverges like tan q at the natural box ends, so the
    // odd trial must vanish as fast as the even one there
    const std::function<double(double)> odd_cos4 = [](double q) {
        const double c = std::cos(q);
        return std::sin(q) * c * c * c * c;
    };
    double worst = 0.0;
    {
        const std::function<double(double)> trials[] = {gaussian, odd_gaussian};
        worst = std::max(worst,
                         shape_invariance_residual(quantum_from_beta(1.0, 0.0), {4000, 10.0},
                                                   trials));
        worst = std::max(worst,
                         shape_invariance_residual(quantum_from_beta(3.0, 1.0), {4000, 10.0},
                                                   trials));
    }
    {
        const std::function<double(double)> trials[] = {cos4, odd_cos4};
        worst = std::max(worst,
                         shape_invariance_residual(quantum_from_beta(2.0, -1.0), {4000, 10.0},
                                                   trials));
    }
    report(8, "shape invariance", worst < 1e-5, fmt("worst operator residual %.2e (tol 1e-5)", worst));
}

// --- 9: nonstandard exact solutions -----------------------------------------

void criterion_9() {
    // free case
    const double k = 1.0, E = -1.0;
    const Fn1D one = fn_const(1.0), Ufree = fn_quadratic(k);
    double worst_eom = 0.0, worst_energy = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double t = 5.0 * i / 400.0;
        const State1D s = nonstd1d_exact_free(t, E, k);
        const double D = k * t * t - E;
        const double a_exact = 4.0 * k * t * (k * t * t + 3.0 * E) / (D * D * D);
        worst_eom = std::max(worst_eom, std::fabs(nonstd1d_rhs(s, one, Ufree).dv - a_exact));
        worst_energy = std::max(worst_energy, std::fabs(energy_nonstd(s, one, Ufree) - E));
    }
    // omega case
    const double ko = 0.2, w = 1.0, Eo = 1.0, phi = 0.4, sE = std::sqrt(Eo);
    const Fn1D ak = fn_const(ko), Uo = fn_quadratic_plus(ko * ko, w * w);
    const double EL0 = energy_nonstd(nonstd1d_exact_omega(0.0, Eo, phi, ko, w), ak, Uo);
    for (int i = 0; i <= 400; ++i) {
        const double t = 3.0 * 2.0 * std::numbers::pi * i / 400.0;
        const State1D s = nonstd1d_exact_omega(t, Eo, phi, ko, w);
        const double th = w * t + phi, den = 1.0 - ko * sE * std::cos(th);
        const double a_exact = -w * w * w * sE * std::sin(th) *
                               (1.0 + ko * sE * std::cos(th) - 2.0 * ko * ko * Eo) /
                               (den * den * den);
        worst_eom = std::max(worst_eom, std::fabs(nonstd1d_rhs(s, ak, Uo).dv - a_exact));
        worst_energy = std::max(worst_energy, std::fabs(energy_nonstd(s, ak, Uo) - EL0));
    }
    // numeric trajectory vs closed form over 3 periods of the omega case
    const SystemRHS rhs = make_nonstd1d_omega(ko, w);
    const State1D s0 = nonstd1d_exact_omega(0.0, Eo, phi, ko, w);
    const double y0[2] = {s0.x, s0.v};
    const double t1 = 3.0 * 2.0 * std::numbers::pi / w;
    const Trajectory tr = integrate_adaptive(rhs, 0.0, y0, t1, tight(1e-12, 0.05));
    double worst_traj = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const State1D ref = nonstd1d_exact_omega(tr.times[i], Eo, phi, ko, w);
        const auto y = tr.state(i);
        worst_traj = std::max({worst_traj, std::fabs(y[0] - ref.x), std::fabs(y[1] - ref.v)});
    }
    const bool pass = worst_eom < 1e-10 && worst_energy < 1e-10 && worst_traj < 1e-7;
    report(9, "nonstandard exact solutions", pass,
           fmt("EOM %.2e, energy %.2e", worst_eom, worst_energy) +
               fmt(" (tol 1e-10), numeric vs exact %.2e (tol 1e-7)", worst_traj));
}

// --- 10: nonstandard 2D superintegrability ----------------------------------

void criterion_10() {
    double worst = 0.0;
    // free separable system carries E1, E2, I3, I4
    {
        const double k1 = 0.1, k2 = 0.1;
        const SystemRHS rhs = make_nonstd2d(make_nonstd(k1, k2, 0.0, 1, 2));
        const double y0[4] = {1.0, 0.5, 1.0, 0.8};
        const Trajectory tr = integrate_adaptive(rhs, 0.0, y0, 50.0, tight(1e-11, 0.02));
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
            worst = std::max(worst, drift_report(tr, inv).max_rel_drift);
        }
    }
    // rational omega case carries the complex K1^n2 (K2*)^n1
    {
        const NonstdParams p = make_nonstd(0.1, 0.1, 1.0, 1, 2);
        const SystemRHS rhs = make_nonstd2d(p);
        const double y0[4] = {0.5, 0.3, 0.0, 0.0};
        const Trajectory tr = integrate_adaptive(rhs, 0.0, y0, 50.0, tight(1e-11, 0.02));
        const InvariantEvaluator invK{"K12", [p](std::span<const double> y) {
                                          return eval_nonstd_K(State2D{y[0], y[1], y[2], y[3]},
                                                               p);
                                      }};
        worst = std::max(worst, drift_report(tr, invK).max_rel_drift);
        // the per-axis energies of the omega-case Lagrangians
        for (int c = 0; c < 2; ++c) {
            const double kc = c == 0 ? p.k1 : p.k2;
            const double wc = (c == 0 ? p.n1 : p.n2) * p.omega0;
            const InvariantEvaluator invE{
                "E", [c, kc, wc](std::span<const double> y) {
                    const State1D s{c == 0 ? y[0] : y[1], c == 0 ? y[2] : y[3]};
                    return Complex{
                        energy_nonstd(s, fn_const(kc), fn_quadratic_plus(kc * kc, wc * wc)),
                        0.0};
                }};
            worst = std::max(worst, drift_report(tr, invE).max_rel_drift);
        }
    }
    report(10, "nonstandard 2D superintegrability", worst < 1e-8,
           fmt("worst drift %.2e (tol 1e-8)", worst));
}

// --- 11: isochrony -----------------------------------------------------------

void criterion_11() {
    std::vector<double> energies;
    for (int i = 0; i < 25; ++i) energies.push_back(0.01 * std::pow(1e4, i / 24.0));

    const PiecewisePotential pw = piecewise_quadratic(1.0, 2.0);
    const double spread = isochrony_scan(pw, energies);
    const double expected = std::numbers::pi / std::sqrt(2.0) * 1.5;
    const double closed = std::fabs(period(pw, 1.0) - expected) / expected;
    const PiecewisePotential quartic = make_piecewise(fn_power(1.0, 4), fn_power(1.0, 4));
    const double control = isochrony_scan(quartic, energies);

    const bool pass = spread < 1e-9 && closed < 1e-8 && control > 0.5;
    report(11, "isochrony", pass,
           fmt("spread %.2e (tol 1e-9), closed form %.2e (tol 1e-8)", spread, closed) +
               fmt(", quartic control %.2f (> 0.5)", control));
}

// --- 12: determinism of the verify suite -------------------------------------

std::string run_capture(const std::string& cmd, int& exit_code) {
    std::string out;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion_12(const std::string& binary) {
    if (binary.empty()) {
        report(12, "verify determinism", false, "oscillab binary path not provided");
        return;
    }
    const auto t0 = Clock::now();
    int code1 = 0, code2 = 0;
    const std::string run1 = run_capture(binary + " verify all", code1);
    const std::string run2 = run_capture(binary + " verify all", code2);
    const double elapsed = seconds_since(t0);
    const bool pass = code1 == 0 && code2 == 0 && !run1.empty() && run1 == run2 &&
                      elapsed < 120.0;
    char head[64];
    std::snprintf(head, sizeof(head), "exit %d/%d, ", code1, code2);
    report(12, "verify determinism", pass,
           std::string(head) + (run1 == run2 ? "byte-identical" : "OUTPUT DIFFERS") +
               fmt(", %.2f s (< 120 s)", elapsed));
}

} // namespace

int main(int argc, char** argv) {
    std::string binary;
    if (argc > 1) binary = argv[1];
    else if (const char* env = std::getenv("OSCILLAB_BIN")) binary = env;

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12(binary);

    if (g_failures == 0) {
        std::printf("ACCEPTANCE: all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
}
