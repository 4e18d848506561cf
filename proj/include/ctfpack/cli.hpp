#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctfpack::cli {

enum ExitCode : int {
    ok = 0,
    usage = 2,
    verification_failed = 3,
    io_error = 4,
};

/// Environment variable naming the default enumerate state directory.
inline constexpr const char* kStateDirEnv = "CTFPACK_STATE_DIR";

/// args[0] is the program name. Graph input falls back to graph6 lines on `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace ctfpack::cli
