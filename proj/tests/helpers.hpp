#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "qmckay/bundle_io.hpp"

namespace qmckay::testing {

inline std::string data_file(const std::string& name) {
    return std::string(QMCKAY_DATA_DIR) + "/" + name;
}

inline GeometryBundle load_orbifold() { return load_bundle(data_file("z5-orbifold.json")); }
inline GeometryBundle load_resolution() { return load_bundle(data_file("z5-resolution.json")); }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

// Runs a shell command, capturing stdout (stderr discarded unless the
// command redirects it).
inline CommandResult run_command(const std::string& cmd) {
    CommandResult result;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return result;
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) result.output += buf;
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace qmckay::testing
