#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "tinyserve/io.hpp"
#include "tinyserve/protocol.hpp"

namespace tinyserve {

inline constexpr std::size_t kDefaultMaxRequestLine = 8192;
inline constexpr std::size_t kDefaultMaxHeaderBytes = 65536;

struct EmptyRequest : IoError {
    EmptyRequest() : IoError("connection closed before any request byte") {}
};

struct RequestLineTooLong : IoError {
    explicit RequestLineTooLong(std::size_t limit)
        : IoError("request line exceeds " + std::to_string(limit) + " bytes") {}
};

// First line of a connection with the terminator removed and surrounding
// whitespace trimmed. byte_count is what was actually consumed from the
// stream, terminator included.
struct RawRequestLine {
    std::string text;
    std::size_t byte_count = 0;
};

// Reads through the first line terminator (LF, CRLF, or a lone CR) and trims
// like Java's String.trim (both ends, every byte <= 0x20). A peer that closes
// mid-line still yields the partial line. Throws EmptyRequest when the peer
// closes before sending anything, RequestLineTooLong past max_len, Timeout
// from the underlying reader.
RawRequestLine read_request_line(ByteReader& conn, std::size_t max_len = kDefaultMaxRequestLine);

// Splits on runs of space/tab: method, target, optional version; extra tokens
// are ignored. Fewer than two tokens: nullopt (malformed).
std::optional<HttpRequest> parse_request_line(const RawRequestLine& line);

// strict: reads and discards header lines until the blank line, end of
// stream, or max_bytes; returns bytes consumed. paper: reads nothing,
// returns 0 (the original program only ever looks at the first line).
std::size_t drain_headers(ByteReader& conn, FidelityMode mode,
                          std::size_t max_bytes = kDefaultMaxHeaderBytes);

}  // namespace tinyserve
