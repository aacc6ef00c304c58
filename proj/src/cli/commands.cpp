#include "oscillab/cli/commands.hpp"

#include <cstdio>
#include <iostream>

#include <json.hpp>

#include "oscillab/cli/config.hpp"
#include "oscillab/cli/io.hpp"
#include "oscillab/cli/verify.hpp"

namespace oscillab::cli {

using nlohmann::json;

namespace {

json invariant_json(const InvariantReport& rep) {
    json j;
    j["invariant"] = rep.name;
    j["initial"] = rep.initial.real();
    if (rep.initial.imag() != 0.0) j["initial_imag"] = rep.initial.imag();
    j["max_abs_drift"] = rep.max_abs_drift;
    j["max_rel_drift"] = rep.max_rel_drift;
    j["samples"] = rep.samples;
    if (!rep.error_samples.empty()) j["error_samples"] = rep.error_samples;
    return j;
}

} // namespace

int cmd_simulate(const std::string& config_path) {
    Scenario sc;
    try {
        sc = parse_scenario_file(config_path);
    } catch (const Error& e) {
        std::cerr << "oscillab simulate: " << e.what() << "\n";
        return kExitConfig;
    }

    Trajectory traj;
    try {
        traj = integrate_adaptive(sc.rhs, sc.t0, sc.initial, sc.t1, sc.integ);
    } catch (const DomainError& e) {
        std::cerr << "oscillab simulate: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ArgumentError& e) {
        std::cerr << "oscillab simulate: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "oscillab simulate: " << e.what() << "\n";
        return kExitRuntime;
    }

    json report;
    report["schema_version"] = kSchemaVersion;
    report["system"] = sc.system;
    report["termination"] = to_string(traj.termination);
    report["samples"] = traj.size();
    report["t_final"] = traj.times.back();
    json invs = json::array();
    for (const auto& inv : sc.invariants)
        invs.push_back(invariant_json(drift_report(traj, inv)));
    report["invariants"] = invs;

    try {
        write_file_atomic(sc.trajectory_csv, trajectory_csv(traj, sc.state_fields));
        write_file_atomic(sc.report_path, report.dump(2) + "\n");
    } catch (const Error& e) {
        std::cerr << "oscillab simulate: " << e.what() << "\n";
        return kExitRuntime;
    }

    if (traj.termination == Termination::step_underflow) {
        std::cerr << "oscillab simulate: step size underflow at t = " << traj.times.back()
                  << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_spectrum(const std::string& config_path) {
    SpectrumJob job;
    try {
        job = parse_spectrum_file(config_path);
    } catch (const Error& e) {
        std::cerr << "oscillab spectrum: " << e.what() << "\n";
        return kExitConfig;
    }

    SpectrumReport rep;
    QGrid grid;
    try {
        grid = make_grid(job.params, job.grid);
        rep = spectrum_report(job.params, job.grid, job.n_levels);
    } catch (const Error& e) {
        std::cerr << "oscillab spectrum: " << e.what() << "\n";
        return kExitConfig;
    }

    // box sanity: the edge potential should dominate every requested level
    if (job.params.lambda >= 0.0) {
        const double v_edge = potential_q(job.params, grid.q.back());
        double need = 0.0;
        for (const auto& lv : rep.levels)
            if (!rep.threshold || lv.ladder < *rep.threshold) need = std::max(need, lv.ladder);
        double want = 2.0 * need;
        if (rep.threshold) want = std::min(want, 0.98 * *rep.threshold);
        if (v_edge < want)
            std::cerr << "oscillab spectrum: warning: edge potential " << v_edge
                      << " is low for the requested levels; increase q_max\n";
    }

    json out;
    out["schema_version"] = kSchemaVersion;
    out["lambda"] = job.params.lambda;
    out["alpha"] = job.params.alpha;
    out["beta"] = job.params.beta;
    out["grid"] = {{"n_points", job.grid.n_points}, {"half_width", grid.half_width}};
    if (rep.threshold)
        out["threshold"] = *rep.threshold;
    else
        out["threshold"] = nullptr;
    if (rep.bound_states)
        out["bound_states"] = *rep.bound_states;
    else
        out["bound_states"] = "infinite";
    json levels = json::array();
    for (const auto& lv : rep.levels)
        levels.push_back({{"n", lv.n},
                          {"ladder", lv.ladder},
                          {"numeric", lv.numeric},
                          {"abs_diff", lv.abs_diff}});
    out["levels"] = levels;

    try {
        write_file_atomic(job.report_path, out.dump(2) + "\n");
    } catch (const Error& e) {
        std::cerr << "oscillab spectrum: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int jobs) {
    std::vector<Check> checks;
    try {
        checks = suite_by_name(suite, seed);
    } catch (const Error& e) {
        std::cerr << "oscillab verify: " << e.what() << "\n";
        return kExitConfig;
    }
    std::string out;
    const bool ok = run_checks(std::move(checks), jobs, out);
    std::fputs(out.c_str(), stdout);
    std::printf("%s\n", ok ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT");
    return ok ? kExitOk : kExitVerifyFail;
}

} // namespace oscillab::cli
