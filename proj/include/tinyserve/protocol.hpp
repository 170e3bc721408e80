#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tinyserve {

inline constexpr std::string_view kHttpVersion = "HTTP/1.0";

// paper: reproduce the original program's observable behavior (404 pages
// answered with status 200, everything served as text/html, request headers
// left unread). strict: corrected semantics.
enum class FidelityMode { paper, strict };

std::string_view to_string(FidelityMode mode);

struct HttpRequest {
    std::string method;
    std::string target;                   // as received, no decoding
    std::optional<std::string> version;   // third token, when present
};

// A response body is either an in-memory buffer or a file reference whose
// length was captured when the file was resolved.
struct BodySource {
    enum class Kind { bytes, file };

    Kind kind = Kind::bytes;
    std::string data;               // kind == bytes
    std::filesystem::path path;     // kind == file
    std::uint64_t length = 0;       // body length in bytes for either kind

    static BodySource from_bytes(std::string bytes);
    static BodySource from_file(std::filesystem::path path, std::uint64_t size);
};

struct HttpResponse {
    int status_code = 200;
    std::string reason;
    // Ordered; at most one entry per name (names compared case-insensitively,
    // stored verbatim as built).
    std::vector<std::pair<std::string, std::string>> headers;
    BodySource body;

    void set_header(std::string_view name, std::string_view value);
    const std::string* find_header(std::string_view name) const;
};

// Fixed reason phrases for the status codes the server emits.
std::string_view reason_phrase(int status_code);

// "<version> <code> <reason>". Throws std::invalid_argument when code is
// outside 100..599.
std::string format_status_line(int code, std::string_view reason, std::string_view version);

// Status line and headers, each line CRLF-terminated, followed by the empty
// CRLF line. Byte-exact wire framing.
std::string serialize_head(const HttpResponse& response, std::string_view version);

}  // namespace tinyserve
