#pragma once
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oscillab/dynamics.hpp"

namespace oscillab {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-12;
    double h_max = 1.0;
    long max_steps = 2000000;   ///< budget on step attempts (accepted + rejected)
    double sample_dt = 0.0;     ///< output sampling interval; 0 = every accepted step
};

/// Throws ArgumentError unless tolerances are positive and h_min <= h_init <= h_max.
void validate(const IntegratorConfig& cfg);

enum class Termination { reached_t1, boundary_event, step_underflow };
const char* to_string(Termination t);

/// Time-ordered samples of one integration run.  Rows of `data` are states;
/// times are strictly increasing and data.size() == times.size() * dim.
struct Trajectory {
    std::size_t dim = 0;
    std::vector<double> times;
    std::vector<double> data;
    Termination termination = Termination::reached_t1;
    std::string system;
    IntegratorConfig config;

    std::size_t size() const { return times.size(); }
    std::span<const double> state(std::size_t i) const {
        return {data.data() + i * dim, dim};
    }
};

/// Classical 4th-order Runge-Kutta single step.
std::vector<double> rk4_step(const SystemRHS& rhs, double t, std::span<const double> y, double h);

/*
 * Adaptive integration with the Dormand-Prince 5(4) embedded pair and its
 * standard 4th-order continuous extension.  Step control is a deterministic
 * PI controller: h <- h * clamp(0.9 * err^(-0.7/5) * err_prev^(0.4/5), 0.2, 5).
 * Per-step error is measured against abs_tol + rel_tol * |state| component-wise.
 *
 * Termination:
 *   reached_t1      integration arrived at t1;
 *   boundary_event  a gate of the SystemRHS fired (1 + lambda r^2 at the margin,
 *                   or a nonstandard denominator about to change sign); the event
 *                   is located on the dense interval by bisection to 1e-12 in time
 *                   and the final sample is strictly on the admissible side;
 *   step_underflow  the controller pushed h below h_min.
 * Exceeding max_steps throws BudgetError.  A gate violated already at the
 * initial state throws DomainError.
 */
Trajectory integrate_adaptive(const SystemRHS& rhs, double t0, std::span<const double> y0,
                              double t1, const IntegratorConfig& cfg);

/// Times in (t0, t1] where f(t, state) crosses zero in the given direction
/// (rising: - to +), located on dense output by bisection to 1e-12.
std::vector<double> crossing_times(const SystemRHS& rhs, double t0, std::span<const double> y0,
                                   double t1, const IntegratorConfig& cfg,
                                   const std::function<double(double, std::span<const double>)>& f,
                                   bool rising);

/// Oscillation period measured as the mean gap between consecutive rising zero
/// crossings of state component `comp`; throws ArgumentError if fewer than two
/// crossings occur in [t0, t1].
double measure_period(const SystemRHS& rhs, double t0, std::span<const double> y0, double t1,
                      const IntegratorConfig& cfg, std::size_t comp = 0);

} // namespace oscillab
