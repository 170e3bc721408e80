#pragma once

#include <string>
#include <string_view>

namespace tinyserve {

// e.g. "2026-08-09T12:34:56Z"
std::string iso8601_utc_now();

// One "[warn] ..." line on stderr.
void log_warning(std::string_view message);

}  // namespace tinyserve
