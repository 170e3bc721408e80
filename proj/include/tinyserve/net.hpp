#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "tinyserve/io.hpp"

namespace tinyserve {

// RAII wrapper around a connected TCP socket. Reads honor the configured
// receive timeout (Timeout); writes send everything or throw
// BrokenConnection with the partial count.
class Socket final : public ByteReader, public ByteWriter {
public:
    Socket() = default;
    Socket(int fd, std::string peer);
    ~Socket() override;

    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    static Socket connect(const std::string& host, std::uint16_t port,
                          std::chrono::milliseconds timeout);

    void set_read_timeout(std::chrono::milliseconds timeout);
    void set_write_timeout(std::chrono::milliseconds timeout);

    std::size_t read(char* buf, std::size_t len) override;
    void write(const char* data, std::size_t len) override;

    const std::string& peer() const { return peer_; }
    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }
    void close();

private:
    int fd_ = -1;
    std::string peer_;
};

// Listening IPv4 socket, non-blocking so the accept loop can poll it
// together with a wake-up descriptor.
class Listener {
public:
    Listener() = default;
    ~Listener();

    Listener(Listener&& other) noexcept;
    Listener& operator=(Listener&& other) noexcept;
    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;

    // Binds and listens; port 0 picks an ephemeral port (see port()).
    // Throws BindError.
    void open(std::uint16_t port);
    std::uint16_t port() const { return port_; }
    int fd() const { return fd_; }
    bool is_open() const { return fd_ >= 0; }

    // nullopt when no connection is pending or the attempt was aborted;
    // throws IoError on a fatal listener failure.
    std::optional<Socket> accept();
    void close();

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

}  // namespace tinyserve
