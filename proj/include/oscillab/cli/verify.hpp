#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oscillab::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool informational = false;   ///< reported, not asserted
    double value = 0.0;
    double tol = 0.0;
};

using CheckFn = std::function<CheckResult()>;

struct Check {
    std::string name;
    CheckFn run;
};

/// Deterministic verification suites; sampling uses the given seed.
std::vector<Check> identities_suite(std::uint64_t seed);
std::vector<Check> brackets_suite(std::uint64_t seed);
std::vector<Check> exact_solutions_suite(std::uint64_t seed);
std::vector<Check> isochrony_suite(std::uint64_t seed);

/// Suite by tag ("identities" | "brackets" | "exact_solutions" | "isochrony" | "all").
std::vector<Check> suite_by_name(const std::string& name, std::uint64_t seed);

/// Runs checks (optionally on `jobs` threads), prints one line per check in a
/// fixed order, returns true iff all non-informational checks pass.
bool run_checks(std::vector<Check> checks, int jobs, std::string& out);

inline constexpr std::uint64_t kDefaultSeed = 20240817ULL;

} // namespace oscillab::cli
