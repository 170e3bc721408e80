#pragma once

#include <string>
#include <vector>

#include "tinyserve/server.hpp"

namespace tinyserve::cli {

struct ParseOutcome {
    int exit_code = 0;
    bool run = false;  // false: exit with exit_code (help shown or usage error)
    ServerConfig config;
};

// Parses flags (argv without the program name) into a complete ServerConfig.
// Defaults: port 8080, root from TINYSERVE_ROOT or the working directory,
// strict mode, sequential handling. Usage errors yield exit code 2.
ParseOutcome parse_args(const std::vector<std::string>& args);

// Validates the root, prints the banner, binds, serves until shutdown.
// Exit codes: 0 clean shutdown, 1 startup/bind failure.
int run(const ServerConfig& config);

}  // namespace tinyserve::cli
