#pragma once
#include <string>
#include <vector>

#include "oscillab/integrate.hpp"

namespace oscillab::cli {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Write via temp file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& content);

/// Trajectory CSV: header "t,<fields...>", one row per sample, shortest
/// round-trip decimals.
std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& fields);

} // namespace oscillab::cli
