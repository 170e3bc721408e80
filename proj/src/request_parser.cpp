#include "tinyserve/request_parser.hpp"

#include <string_view>
#include <vector>

namespace tinyserve {

namespace {

// StringTokenizer-style delimiters for the request line.
constexpr bool is_token_delim(char c) {
    return c == ' ' || c == '\t';
}

// Java String.trim: drop every leading/trailing byte <= 0x20.
std::string_view trim_ascii(std::string_view s) {
    while (!s.empty() && static_cast<unsigned char>(s.front()) <= 0x20) {
        s.remove_prefix(1);
    }
    while (!s.empty() && static_cast<unsigned char>(s.back()) <= 0x20) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

RawRequestLine read_request_line(ByteReader& conn, std::size_t max_len) {
    std::string buf;
    bool seen_cr = false;
    std::size_t consumed = 0;
    std::size_t line_bytes = 0;
    char c = 0;
    for (;;) {
        if (conn.read(&c, 1) == 0) {
            if (consumed == 0) {
                throw EmptyRequest();
            }
            break;  // peer closed mid-line: serve what arrived
        }
        ++consumed;
        if (c == '\n') {
            break;
        }
        if (++line_bytes > max_len) {
            throw RequestLineTooLong(max_len);
        }
        if (c == '\r') {
            seen_cr = true;  // line text ends at the first CR; keep consuming to the LF
        } else if (!seen_cr) {
            buf.push_back(c);
        }
    }
    RawRequestLine line;
    line.text = std::string(trim_ascii(buf));
    line.byte_count = consumed;
    return line;
}

std::optional<HttpRequest> parse_request_line(const RawRequestLine& line) {
    std::vector<std::string_view> tokens;
    const std::string_view text = line.text;
    std::size_t i = 0;
    while (i < text.size() && tokens.size() < 3) {
        while (i < text.size() && is_token_delim(text[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && !is_token_delim(text[i])) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(text.substr(start, i - start));
        }
    }
    if (tokens.size() < 2) {
        return std::nullopt;  // the original program dies on the second nextToken() here
    }
    HttpRequest request;
    request.method = std::string(tokens[0]);
    request.target = std::string(tokens[1]);
    if (tokens.size() >= 3) {
        request.version = std::string(tokens[2]);
    }
    return request;
}

std::size_t drain_headers(ByteReader& conn, FidelityMode mode, std::size_t max_bytes) {
    if (mode == FidelityMode::paper) {
        return 0;
    }
    std::size_t drained = 0;
    std::size_t line_len = 0;
    char c = 0;
    while (drained < max_bytes) {
        if (conn.read(&c, 1) == 0) {
            break;  // peer closed its write side; nothing left to drain
        }
        ++drained;
        if (c == '\n') {
            if (line_len == 0) {
                break;  // blank line ends the header block
            }
            line_len = 0;
        } else if (c != '\r') {
            ++line_len;
        }
    }
    return drained;
}

}  // namespace tinyserve
