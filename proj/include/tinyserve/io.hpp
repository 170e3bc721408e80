#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tinyserve {

// Byte-stream interfaces used by the parser, the response writer and the
// test instrumentation. Sockets implement both sides.

class ByteReader {
public:
    virtual ~ByteReader() = default;

    // Reads up to `len` bytes into `buf`. Returns the number of bytes read,
    // 0 at end of stream. Throws Timeout when the read deadline passes.
    virtual std::size_t read(char* buf, std::size_t len) = 0;
};

class ByteWriter {
public:
    virtual ~ByteWriter() = default;

    // Writes all `len` bytes or throws BrokenConnection.
    virtual void write(const char* data, std::size_t len) = 0;
    virtual void flush() {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Timeout : IoError {
    Timeout() : IoError("read timed out") {}
};

// Peer stopped accepting data mid-response. bytes_written counts what made
// it out before the failure; emit_response widens it to whole-wire bytes.
struct BrokenConnection : IoError {
    explicit BrokenConnection(const std::string& what) : IoError(what) {}
    std::size_t bytes_written = 0;
};

// A file body ended before the advertised length could be streamed.
struct TruncatedBody : IoError {
    explicit TruncatedBody(const std::string& what) : IoError(what) {}
    std::size_t bytes_written = 0;
};

struct BindError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConnectError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tinyserve
