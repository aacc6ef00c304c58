#include "oscillab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscillab {

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw ArgumentError("IntegratorConfig: tolerances must be positive");
    if (!(cfg.h_min > 0.0) || !(cfg.h_min <= cfg.h_init) || !(cfg.h_init <= cfg.h_max))
        throw ArgumentError("IntegratorConfig: need 0 < h_min <= h_init <= h_max");
    if (cfg.max_steps <= 0)
        throw ArgumentError("IntegratorConfig: max_steps must be positive");
    if (cfg.sample_dt < 0.0)
        throw ArgumentError("IntegratorConfig: sample_dt must be >= 0");
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::reached_t1: return "reached_t1";
        case Termination::boundary_event: return "boundary_event";
        case Termination::step_underflow: return "step_underflow";
    }
    return "unknown";
}

std::vector<double> rk4_step(const SystemRHS& rhs, double t, std::span<const double> y, double h) {
    (void)t;   // all systems here are autonomous
    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), out(n);
    rhs.eval(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs.eval(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs.eval(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs.eval(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 5th-minus-4th order weights for the error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2, kFacMax = 5.0;
constexpr double kEventTimeTol = 1e-12;

// Continuous extension over one accepted step.
struct DenseSegment {
    double t0 = 0, h = 0;
    std::size_t dim = 0;
    std::vector<double> r;   // 5 * dim interpolation coefficients

    void eval(double t, std::span<double> out) const {
        const double th = (t - t0) / h, th1 = 1.0 - th;
        for (std::size_t i = 0; i < dim; ++i) {
            const double* c = r.data() + 5 * i;
            out[i] = c[0] + th * (c[1] + th1 * (c[2] + th * (c[3] + th1 * c[4])));
        }
    }
};

class Dopri5 {
public:
    Dopri5(const SystemRHS& rhs, double t0, std::span<const double> y0, const IntegratorConfig& cfg)
        : rhs_(rhs), cfg_(cfg), n_(rhs.dim), t_(t0), y_(y0.begin(), y0.end()) {
        for (auto* k : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &ynew_})
            k->resize(n_);
        seg_.dim = n_;
        seg_.r.resize(5 * n_);
        h_ = cfg.h_init;
        err_prev_ = 1.0;
    }

    // Advances by one accepted step, not beyond t_end.  Returns false on h-underflow.
    bool step(double t_end) {
        while (true) {
            if (++attempts_ > cfg_.max_steps)
                throw BudgetError("integrate_adaptive: max_steps exceeded");
            double h = std::min(h_, cfg_.h_max);
            if (t_ + h > t_end) h = t_end - t_;

            double err;
            try {
                err = attempt(h);
            } catch (const Error&) {
                // a stage left the admissible region; treat as a rejected step
                h_ = 0.25 * h;
                if (h_ < cfg_.h_min) return false;
                continue;
            }
            if (err <= 1.0) {
                make_dense(h);
                t_ += h;
                y_.swap(ynew_);
                // PI controller on the accepted history
                double fac = kSafety * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                             std::pow(err_prev_ > 0 ? err_prev_ : 1e-10, 0.4 / 5.0);
                fac = std::clamp(fac, kFacMin, kFacMax);
                h_ = std::min(h * fac, cfg_.h_max);
                err_prev_ = err;
                return true;
            }
            const double fac = std::max(kFacMin, kSafety * std::pow(err, -1.0 / 5.0));
            h_ = h * fac;
            if (h_ < cfg_.h_min) return false;
        }
    }

    double t() const { return t_; }
    std::span<const double> y() const { return y_; }
    const DenseSegment& segment() const { return seg_; }

private:
    double attempt(double h) {
        rhs_.eval(y_, k1_);
        for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y_[i] + h * a21 * k1_[i];
        rhs_.eval(ytmp_, k2_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
        rhs_.eval(ytmp_, k3_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
        rhs_.eval(ytmp_, k4_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
        rhs_.eval(ytmp_, k5_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                                    a65 * k5_[i]);
        rhs_.eval(ytmp_, k6_);
        for (std::size_t i = 0; i < n_; ++i)
            ynew_[i] = y_[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] + b5 * k5_[i] +
                                    b6 * k6_[i]);
        rhs_.eval(ynew_, k7_);

        double err2 = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                                  e6 * k6_[i] + e7 * k7_[i]);
            const double sc = cfg_.abs_tol +
                              cfg_.rel_tol * std::max(std::fabs(y_[i]), std::fabs(ynew_[i]));
            err2 += (e / sc) * (e / sc);
        }
        return std::sqrt(err2 / static_cast<double>(n_));
    }

    void make_dense(double h) {
        seg_.t0 = t_;
        seg_.h = h;
        for (std::size_t i = 0; i < n_; ++i) {
            double* c = seg_.r.data() + 5 * i;
            const double dy = ynew_[i] - y_[i];
            const double bspl = h * k1_[i] - dy;
            c[0] = y_[i];
            c[1] = dy;
            c[2] = bspl;
            c[3] = dy - h * k7_[i] - bspl;
            c[4] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] +
                        d7 * k7_[i]);
        }
    }

    const SystemRHS& rhs_;
    const IntegratorConfig& cfg_;
    std::size_t n_;
    double t_, h_ = 0, err_prev_ = 1.0;
    long attempts_ = 0;
    std::vector<double> y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
    DenseSegment seg_;
};

using GateFn = std::function<double(std::span<const double>)>;

// Combined monitor: positive while the step may continue.
struct GateMonitor {
    GateFn domain, singular;
    double sign = 1.0;   // orientation of the singular gate at the initial state

    bool active() const { return static_cast<bool>(domain) || static_cast<bool>(singular); }

    double operator()(std::span<const double> y) const {
        double g = std::numeric_limits<double>::infinity();
        if (domain) g = std::min(g, domain(y));
        if (singular) g = std::min(g, sign * singular(y));
        return g;
    }
};

// Largest time in [seg.t0, t_hi] with gate > 0, assuming gate > 0 at seg.t0
// and gate <= 0 at t_hi.  Bisection to kEventTimeTol.
double locate_event(const DenseSegment& seg, const GateMonitor& gate, double t_hi,
                    std::vector<double>& buf) {
    double lo = seg.t0, hi = t_hi;
    while (hi - lo > kEventTimeTol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        seg.eval(mid, buf);
        (gate(buf) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

Trajectory integrate_adaptive(const SystemRHS& rhs, double t0, std::span<const double> y0,
                              double t1, const IntegratorConfig& cfg) {
    validate(cfg);
    if (!(t1 > t0)) throw ArgumentError("integrate_adaptive: need t1 > t0");
    if (y0.size() != rhs.dim) throw ArgumentError("integrate_adaptive: state dimension mismatch");

    GateMonitor gate{rhs.domain_gate, rhs.singular_gate, 1.0};
    if (gate.domain && gate.domain(y0) <= 0.0)
        throw DomainError("integrate_adaptive: initial state outside the admissible region");
    if (gate.singular) {
        const double g0 = gate.singular(y0);
        if (g0 == 0.0)
            throw DomainError("integrate_adaptive: initial state on a singular level set");
        gate.sign = g0 > 0.0 ? 1.0 : -1.0;
    }

    Trajectory traj;
    traj.dim = rhs.dim;
    traj.system = rhs.tag;
    traj.config = cfg;

    auto emit = [&](double t, std::span<const double> y) {
        if (!traj.times.empty() && !(t > traj.times.back())) return;
        traj.times.push_back(t);
        traj.data.insert(traj.data.end(), y.begin(), y.end());
    };
    emit(t0, y0);

    Dopri5 stepper(rhs, t0, y0, cfg);
    std::vector<double> buf(rhs.dim);
    double next_sample = cfg.sample_dt > 0.0 ? t0 + cfg.sample_dt : 0.0;

    while (stepper.t() < t1) {
        if (!stepper.step(t1)) {
            emit(stepper.t(), stepper.y());   // last reachable state
            traj.termination = Termination::step_underflow;
            return traj;
        }
        const DenseSegment& seg = stepper.segment();
        double t_stop = stepper.t();
        bool event = false;
        if (gate.active() && gate(stepper.y()) <= 0.0) {
            t_stop = locate_event(seg, gate, stepper.t(), buf);
            event = true;
        }
        if (cfg.sample_dt > 0.0) {
            while (next_sample <= t_stop && next_sample < t1) {
                seg.eval(next_sample, buf);
                emit(next_sample, buf);
                next_sample += cfg.sample_dt;
            }
        } else if (!event) {
            emit(stepper.t(), stepper.y());
        }
        if (event) {
            seg.eval(t_stop, buf);
            emit(t_stop, buf);
            traj.termination = Termination::boundary_event;
            return traj;
        }
    }
    emit(stepper.t(), stepper.y());
    traj.termination = Termination::reached_t1;
    return traj;
}

std::vector<double> crossing_times(const SystemRHS& rhs, double t0, std::span<const double> y0,
                                   double t1, const IntegratorConfig& cfg,
                                   const std::function<double(double, std::span<const double>)>& f,
                                   bool rising) {
    validate(cfg);
    if (!(t1 > t0)) throw ArgumentError("crossing_times: need t1 > t0");

    std::vector<double> out;
    Dopri5 stepper(rhs, t0, y0, cfg);
    std::vector<double> buf(rhs.dim);
    const double flip = rising ? 1.0 : -1.0;
    double f_prev = flip * f(t0, y0);
    double t_prev = t0;

    while (stepper.t() < t1) {
        if (!stepper.step(t1)) break;
        const DenseSegment& seg = stepper.segment();
        const double f_now = flip * f(stepper.t(), stepper.y());
        if (f_prev < 0.0 && f_now >= 0.0) {
            double lo = t_prev, hi = stepper.t();
            while (hi - lo > kEventTimeTol) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                seg.eval(mid, buf);
                (flip * f(mid, buf) < 0.0 ? lo : hi) = mid;
            }
            out.push_back(hi);
        }
        f_prev = f_now;
        t_prev = stepper.t();
    }
    return out;
}

double measure_period(const SystemRHS& rhs, double t0, std::span<const double> y0, double t1,
                      const IntegratorConfig& cfg, std::size_t comp) {
    const auto times = crossing_times(
        rhs, t0, y0, t1, cfg,
        [comp](double, std::span<const double> y) { return y[comp]; }, true);
    if (times.size() < 2)
        throw ArgumentError("measure_period: fewer than two rising crossings in [t0, t1]");
    return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

} // namespace oscillab
