#include "oscillab/cli/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace oscillab::cli {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ArgumentError("cannot open output file: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw ArgumentError("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& fields) {
    if (fields.size() != traj.dim)
        throw ArgumentError("trajectory_csv: field count does not match trajectory dimension");
    std::string out = "t";
    for (const auto& f : fields) {
        out += ',';
        out += f;
    }
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.times[i]);
        for (double v : traj.state(i)) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace oscillab::cli
