#include "oscillab/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace oscillab::cli {

using nlohmann::json;

namespace {

json load_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Unknown fields are rejected rather than silently ignored.
void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw ConfigError(ctx + ": unknown field '" + key + "'");
}

double get_num(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw ConfigError(ctx + ": missing field '" + key + "'");
    if (!j[key].is_number())
        throw ConfigError(ctx + ": field '" + key + "' must be a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double dflt, const std::string& ctx) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number())
        throw ConfigError(ctx + ": field '" + key + "' must be a number");
    return j[key].get<double>();
}

long get_int(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw ConfigError(ctx + ": missing field '" + key + "'");
    if (!j[key].is_number_integer())
        throw ConfigError(ctx + ": field '" + key + "' must be an integer");
    return j[key].get<long>();
}

std::string get_str(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw ConfigError(ctx + ": missing field '" + key + "'");
    if (!j[key].is_string())
        throw ConfigError(ctx + ": field '" + key + "' must be a string");
    return j[key].get<std::string>();
}

void check_schema_version(const json& j, const std::string& ctx) {
    if (get_int(j, "schema_version", ctx) != kSchemaVersion)
        throw ConfigError(ctx + ": unsupported schema_version");
}

// Evaluators adapt the module-level formulas to raw trajectory rows.
InvariantEvaluator real_inv(std::string name, std::function<double(std::span<const double>)> f) {
    return {std::move(name),
            [f = std::move(f)](std::span<const double> y) { return Complex{f(y), 0.0}; }};
}

struct BuiltSystem {
    SystemRHS rhs;
    std::vector<std::string> fields;
    std::vector<InvariantEvaluator> invariants;
};

BuiltSystem build_ml1d(const json& pj, const std::string& ctx) {
    check_keys(pj, {"lambda", "alpha"}, ctx);
    const DeformParams p = make_deform(get_num(pj, "lambda", ctx), get_num(pj, "alpha", ctx));
    BuiltSystem b;
    b.rhs = make_ml1d(p);
    b.fields = {"x", "v"};
    b.invariants.push_back(real_inv("energy", [p](std::span<const double> y) {
        return ml1d_energy(State1D{y[0], y[1]}, p);
    }));
    return b;
}

BuiltSystem build_ml2d(const json& pj, const std::string& ctx) {
    check_keys(pj, {"lambda", "alpha", "potential"}, ctx);
    const DeformParams p = make_deform(get_num(pj, "lambda", ctx), get_num(pj, "alpha", ctx));
    std::string pot_name = "superseparable";
    if (pj.contains("potential")) pot_name = get_str(pj, "potential", ctx);
    Potential2D V;
    if (pot_name == "superseparable")
        V = potential_superseparable(p.lambda);
    else if (pot_name == "r2")
        V = potential_r2();
    else
        throw ConfigError(ctx + ": unknown potential '" + pot_name + "'");

    BuiltSystem b;
    b.rhs = make_ml2d(p, V);
    b.fields = {"x", "y", "px", "py"};
    auto phase = [](std::span<const double> y) { return PhaseState2D{y[0], y[1], y[2], y[3]}; };
    b.invariants.push_back(real_inv("H", [p, V, phase](std::span<const double> y) {
        return ml2d_hamiltonian(phase(y), p, V);
    }));
    auto vel = [p, phase](std::span<const double> y) {
        return inverse_legendre_2d(phase(y), p.lambda);
    };
    b.invariants.push_back(
        real_inv("I1", [p, vel](std::span<const double> y) { return eval_I123(vel(y), p).I1; }));
    b.invariants.push_back(
        real_inv("I2", [p, vel](std::span<const double> y) { return eval_I123(vel(y), p).I2; }));
    b.invariants.push_back(
        real_inv("I3", [p, vel](std::span<const double> y) { return eval_I123(vel(y), p).I3; }));
    return b;
}

BuiltSystem build_harmonic2d(const json& pj, const std::string& ctx) {
    check_keys(pj, {"n1", "n2", "omega0"}, ctx);
    const int n1 = static_cast<int>(get_int(pj, "n1", ctx));
    const int n2 = static_cast<int>(get_int(pj, "n2", ctx));
    const double w0 = get_num(pj, "omega0", ctx);
    BuiltSystem b;
    b.rhs = make_harmonic2d(n1, n2, w0);
    b.fields = {"x", "y", "px", "py"};
    b.invariants.push_back(real_inv("Ex", [n1, w0](std::span<const double> y) {
        const double w = n1 * w0;
        return 0.5 * (y[2] * y[2] + w * w * y[0] * y[0]);
    }));
    b.invariants.push_back(real_inv("Ey", [n2, w0](std::span<const double> y) {
        const double w = n2 * w0;
        return 0.5 * (y[3] * y[3] + w * w * y[1] * y[1]);
    }));
    b.invariants.push_back({"J", [n1, n2, w0](std::span<const double> y) {
                                return eval_harmonic_J(PhaseState2D{y[0], y[1], y[2], y[3]}, n1,
                                                       n2, w0);
                            }});
    return b;
}

BuiltSystem build_nonstd1d(const json& pj, const std::string& ctx, bool with_omega) {
    const double k = get_num(pj, "k", ctx);
    Fn1D alpha_fn, U_fn;
    BuiltSystem b;
    if (with_omega) {
        check_keys(pj, {"k", "omega"}, ctx);
        const double w = get_num(pj, "omega", ctx);
        alpha_fn = fn_const(k);
        U_fn = fn_quadratic_plus(k * k, w * w);
        b.rhs = make_nonstd1d_omega(k, w);
    } else {
        check_keys(pj, {"k"}, ctx);
        alpha_fn = fn_const(1.0);
        U_fn = fn_quadratic(k);
        b.rhs = make_nonstd1d_free(k);
    }
    b.fields = {"x", "v"};
    b.invariants.push_back(real_inv("EL", [alpha_fn, U_fn](std::span<const double> y) {
        return energy_nonstd(State1D{y[0], y[1]}, alpha_fn, U_fn);
    }));
    return b;
}

BuiltSystem build_nonstd2d(const json& pj, const std::string& ctx) {
    check_keys(pj, {"k1", "k2", "omega0", "n1", "n2"}, ctx);
    const double k1 = get_num(pj, "k1", ctx), k2 = get_num(pj, "k2", ctx);
    const double w0 = get_num_or(pj, "omega0", 0.0, ctx);
    const int n1 = pj.contains("n1") ? static_cast<int>(get_int(pj, "n1", ctx)) : 1;
    const int n2 = pj.contains("n2") ? static_cast<int>(get_int(pj, "n2", ctx)) : 1;
    const NonstdParams p = make_nonstd(k1, k2, w0, n1, n2);

    BuiltSystem b;
    b.rhs = make_nonstd2d(p);
    b.fields = {"x", "y", "vx", "vy"};
    auto vel = [](std::span<const double> y) { return State2D{y[0], y[1], y[2], y[3]}; };
    const double w1 = p.n1 * p.omega0, w2 = p.n2 * p.omega0;
    b.invariants.push_back(real_inv("E1", [k1, w1](std::span<const double> y) {
        return energy_nonstd(State1D{y[0], y[2]}, fn_const(w1 > 0.0 ? k1 : 1.0),
                             w1 > 0.0 ? fn_quadratic_plus(k1 * k1, w1 * w1) : fn_quadratic(k1));
    }));
    b.invariants.push_back(real_inv("E2", [k2, w2](std::span<const double> y) {
        return energy_nonstd(State1D{y[1], y[3]}, fn_const(w2 > 0.0 ? k2 : 1.0),
                             w2 > 0.0 ? fn_quadratic_plus(k2 * k2, w2 * w2) : fn_quadratic(k2));
    }));
    if (p.omega0 == 0.0) {
        b.invariants.push_back(real_inv("I3", [k1, k2, vel](std::span<const double> y) {
            return eval_nonstd_integrals(vel(y), k1, k2).I3;
        }));
        b.invariants.push_back(real_inv("I4", [k1, k2, vel](std::span<const double> y) {
            return eval_nonstd_integrals(vel(y), k1, k2).I4;
        }));
    } else {
        b.invariants.push_back({"K12", [p, vel](std::span<const double> y) {
                                    return eval_nonstd_K(vel(y), p);
                                }});
    }
    return b;
}

BuiltSystem build_isochrony(const json& pj, const std::string& ctx) {
    check_keys(pj, {"omega1", "omega2"}, ctx);
    const double w1 = get_num(pj, "omega1", ctx), w2 = get_num(pj, "omega2", ctx);
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw ConfigError(ctx + ": omega1, omega2 must be positive");
    BuiltSystem b;
    const double w1sq = w1 * w1, w2sq = w2 * w2;
    Fn1D U{[w1sq, w2sq](double x) { return (x < 0.0 ? w1sq : w2sq) * x * x; },
           [w1sq, w2sq](double x) { return 2.0 * (x < 0.0 ? w1sq : w2sq) * x; }};
    b.rhs = make_mechanical1d(U, "isochrony_piecewise");
    b.fields = {"x", "v"};
    b.invariants.push_back(real_inv("energy", [U](std::span<const double> y) {
        return 0.5 * y[1] * y[1] + fn_eval(U, y[0]);
    }));
    return b;
}

BuiltSystem build_system(const std::string& system, const json& pj, const std::string& ctx) {
    if (system == "ml1d") return build_ml1d(pj, ctx);
    if (system == "ml2d") return build_ml2d(pj, ctx);
    if (system == "harmonic2d") return build_harmonic2d(pj, ctx);
    if (system == "nonstd1d_free") return build_nonstd1d(pj, ctx, false);
    if (system == "nonstd1d_omega") return build_nonstd1d(pj, ctx, true);
    if (system == "nonstd2d") return build_nonstd2d(pj, ctx);
    if (system == "isochrony_piecewise") return build_isochrony(pj, ctx);
    throw ConfigError(ctx + ": unknown system '" + system + "'");
}

IntegratorConfig parse_integrator(const json& j, const std::string& ctx) {
    IntegratorConfig cfg;
    if (j.is_null()) return cfg;
    check_keys(j, {"rel_tol", "abs_tol", "h_init", "h_min", "h_max", "max_steps", "sample_dt"},
               ctx);
    cfg.rel_tol = get_num_or(j, "rel_tol", cfg.rel_tol, ctx);
    cfg.abs_tol = get_num_or(j, "abs_tol", cfg.abs_tol, ctx);
    cfg.h_init = get_num_or(j, "h_init", cfg.h_init, ctx);
    cfg.h_min = get_num_or(j, "h_min", cfg.h_min, ctx);
    cfg.h_max = get_num_or(j, "h_max", cfg.h_max, ctx);
    if (j.contains("max_steps")) cfg.max_steps = get_int(j, "max_steps", ctx);
    cfg.sample_dt = get_num_or(j, "sample_dt", cfg.sample_dt, ctx);
    try {
        validate(cfg);
    } catch (const ArgumentError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    return cfg;
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    const json j = load_json(text, origin);
    check_keys(j,
               {"schema_version", "system", "params", "initial_state", "time", "integrator",
                "invariants", "output"},
               origin);
    check_schema_version(j, origin);

    Scenario sc;
    sc.system = get_str(j, "system", origin);
    if (!j.contains("params"))
        throw ConfigError(origin + ": missing field 'params'");
    BuiltSystem built = build_system(sc.system, j["params"], origin + ".params");
    sc.rhs = std::move(built.rhs);
    sc.state_fields = std::move(built.fields);

    if (!j.contains("initial_state") || !j["initial_state"].is_object())
        throw ConfigError(origin + ": 'initial_state' must be an object of state fields");
    const json& is = j["initial_state"];
    check_keys(is, std::set<std::string>(sc.state_fields.begin(), sc.state_fields.end()),
               origin + ".initial_state");
    for (const auto& f : sc.state_fields)
        sc.initial.push_back(get_num(is, f, origin + ".initial_state"));

    if (!j.contains("time"))
        throw ConfigError(origin + ": missing field 'time'");
    check_keys(j["time"], {"t0", "t1"}, origin + ".time");
    sc.t0 = get_num_or(j["time"], "t0", 0.0, origin + ".time");
    sc.t1 = get_num(j["time"], "t1", origin + ".time");
    if (!(sc.t1 > sc.t0))
        throw ConfigError(origin + ".time: need t1 > t0");

    sc.integ = parse_integrator(j.contains("integrator") ? j["integrator"] : json(nullptr),
                                origin + ".integrator");

    if (j.contains("invariants")) {
        if (!j["invariants"].is_array())
            throw ConfigError(origin + ": 'invariants' must be an array of names");
        for (const auto& item : j["invariants"]) {
            if (!item.is_string())
                throw ConfigError(origin + ": invariant names must be strings");
            const std::string name = item.get<std::string>();
            const auto it = std::find_if(built.invariants.begin(), built.invariants.end(),
                                         [&](const auto& inv) { return inv.name == name; });
            if (it == built.invariants.end())
                throw ConfigError(origin + ": invariant '" + name + "' is not defined for system '" +
                                  sc.system + "'");
            sc.invariants.push_back(*it);
        }
    } else {
        sc.invariants = std::move(built.invariants);   // default: track everything defined
    }

    if (!j.contains("output"))
        throw ConfigError(origin + ": missing field 'output'");
    check_keys(j["output"], {"trajectory_csv", "report"}, origin + ".output");
    sc.trajectory_csv = get_str(j["output"], "trajectory_csv", origin + ".output");
    sc.report_path = get_str(j["output"], "report", origin + ".output");
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    return parse_scenario_text(read_file(path), path);
}

SpectrumJob parse_spectrum_text(const std::string& text, const std::string& origin) {
    const json j = load_json(text, origin);
    check_keys(j, {"schema_version", "lambda", "alpha", "beta", "grid", "n_levels", "output"},
               origin);
    check_schema_version(j, origin);

    SpectrumJob job;
    const double lambda = get_num(j, "lambda", origin);
    const bool has_alpha = j.contains("alpha"), has_beta = j.contains("beta");
    if (has_alpha == has_beta)
        throw ConfigError(origin + ": specify exactly one of 'alpha' or 'beta'");
    try {
        job.params = has_alpha ? quantum_from_alpha(get_num(j, "alpha", origin), lambda)
                               : quantum_from_beta(get_num(j, "beta", origin), lambda);
    } catch (const ArgumentError& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    if (j.contains("grid")) {
        check_keys(j["grid"], {"n_points", "q_max"}, origin + ".grid");
        job.grid.n_points = static_cast<int>(get_int(j["grid"], "n_points", origin + ".grid"));
        job.grid.q_max = get_num_or(j["grid"], "q_max", job.grid.q_max, origin + ".grid");
    }
    if (j.contains("n_levels")) job.n_levels = static_cast<int>(get_int(j, "n_levels", origin));
    if (job.n_levels < 1)
        throw ConfigError(origin + ": n_levels must be >= 1");

    if (!j.contains("output"))
        throw ConfigError(origin + ": missing field 'output'");
    check_keys(j["output"], {"report"}, origin + ".output");
    job.report_path = get_str(j["output"], "report", origin + ".output");
    return job;
}

SpectrumJob parse_spectrum_file(const std::string& path) {
    return parse_spectrum_text(read_file(path), path);
}

} // namespace oscillab::cli
