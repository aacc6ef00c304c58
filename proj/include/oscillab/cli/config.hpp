#pragma once
#include <string>
#include <vector>

#include "oscillab/invariants.hpp"
#include "oscillab/quantum.hpp"

namespace oscillab::cli {

/// A simulate scenario, fully resolved: system, initial state, integrator
/// settings, invariants to track, output paths.  Parsed from a JSON document
/// with a versioned schema; unknown fields anywhere are a hard error.
struct Scenario {
    SystemRHS rhs;
    std::vector<std::string> state_fields;        ///< CSV column names
    std::vector<double> initial;
    double t0 = 0.0, t1 = 0.0;
    IntegratorConfig integ;
    std::vector<InvariantEvaluator> invariants;   ///< validated against the system
    std::string trajectory_csv;
    std::string report_path;
    std::string system;
};

struct SpectrumJob {
    QuantumParams params;
    GridSpec grid;
    int n_levels = 5;
    std::string report_path;
};

Scenario parse_scenario_file(const std::string& path);   // throws ConfigError
Scenario parse_scenario_text(const std::string& text, const std::string& origin);

SpectrumJob parse_spectrum_file(const std::string& path);
SpectrumJob parse_spectrum_text(const std::string& text, const std::string& origin);

inline constexpr int kSchemaVersion = 1;

} // namespace oscillab::cli
