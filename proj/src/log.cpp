#include "tinyserve/log.hpp"

#include <chrono>
#include <ctime>
#include <iostream>

namespace tinyserve {

std::string iso8601_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[24];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void log_warning(std::string_view message) {
    std::cerr << "[warn] " << message << "\n";
}

}  // namespace tinyserve
