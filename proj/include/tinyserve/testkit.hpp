#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tinyserve/io.hpp"

// Raw-TCP client and stream instrumentation for wire-level tests. The
// splitter here is deliberately independent of the serialization path it is
// used to check.
namespace tinyserve::testkit {

struct EmptyCapture : std::runtime_error {
    EmptyCapture() : std::runtime_error("no bytes received before the read timeout") {}
};

struct CapturedResponse {
    std::string raw;
    std::optional<std::string> status_line;
    std::optional<int> status_code;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;

    const std::string* find_header(std::string_view name) const;
};

// Lenient split on the first blank line (CRLF or bare LF). No parseable head
// means status stays absent and the whole input becomes the body.
CapturedResponse split_response(std::string raw);

// One connection: write request_bytes, read until the peer closes or the
// timeout passes, split what arrived. Throws ConnectError when the
// connection is refused, EmptyCapture on timeout with nothing received.
CapturedResponse raw_request(const std::string& host, std::uint16_t port,
                             std::string_view request_bytes,
                             std::chrono::milliseconds read_timeout = std::chrono::milliseconds(2000));

// ByteReader over an in-memory buffer; on exhaustion either reports end of
// stream or throws Timeout (for exercising timeout paths).
class StringReader final : public ByteReader {
public:
    enum class OnExhaust { eof, timeout };

    explicit StringReader(std::string data, OnExhaust on_exhaust = OnExhaust::eof)
        : data_(std::move(data)), on_exhaust_(on_exhaust) {}

    std::size_t read(char* buf, std::size_t len) override;
    std::size_t consumed() const { return pos_; }

private:
    std::string data_;
    OnExhaust on_exhaust_;
    std::size_t pos_ = 0;
};

// ByteWriter that records the size of every write and the concatenated
// payload; used to observe chunking.
class RecordingSink final : public ByteWriter {
public:
    void write(const char* data, std::size_t len) override;

    const std::vector<std::size_t>& write_sizes() const { return write_sizes_; }
    const std::string& payload() const { return payload_; }

private:
    std::vector<std::size_t> write_sizes_;
    std::string payload_;
};

}  // namespace tinyserve::testkit
