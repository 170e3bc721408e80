#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto parsed = tinyserve::cli::parse_args(args);
    if (!parsed.run) {
        return parsed.exit_code;
    }
    return tinyserve::cli::run(parsed.config);
}
