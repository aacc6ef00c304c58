#pragma once
#include <cstdint>
#include <string>

namespace oscillab::cli {

/// Exit codes shared by all subcommands:
///   0 success, 1 verification failure, 2 config/validation error,
///   3 runtime integration failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

int cmd_simulate(const std::string& config_path);
int cmd_spectrum(const std::string& config_path);
int cmd_verify(const std::string& suite, std::uint64_t seed, int jobs);

} // namespace oscillab::cli
