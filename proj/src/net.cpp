#include "tinyserve/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

namespace tinyserve {

namespace {

std::string errno_text(int err) {
    return std::strerror(err);
}

std::string format_peer(const sockaddr_in& addr) {
    char ip[INET_ADDRSTRLEN] = {};
    ::inet_ntop(AF_INET, &addr.sin_addr, ip, sizeof ip);
    return std::string(ip) + ":" + std::to_string(ntohs(addr.sin_port));
}

timeval to_timeval(std::chrono::milliseconds ms) {
    if (ms.count() < 1) {
        ms = std::chrono::milliseconds(1);  // 0 would mean "wait forever"
    }
    timeval tv{};
    tv.tv_sec = static_cast<time_t>(ms.count() / 1000);
    tv.tv_usec = static_cast<suseconds_t>((ms.count() % 1000) * 1000);
    return tv;
}

void set_socket_timeout(int fd, int option, std::chrono::milliseconds timeout) {
    const timeval tv = to_timeval(timeout);
    ::setsockopt(fd, SOL_SOCKET, option, &tv, sizeof tv);
}

}  // namespace

Socket::Socket(int fd, std::string peer) : fd_(fd), peer_(std::move(peer)) {}

Socket::~Socket() {
    close();
}

Socket::Socket(Socket&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), peer_(std::move(other.peer_)) {}

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
        peer_ = std::move(other.peer_);
    }
    return *this;
}

Socket Socket::connect(const std::string& host, std::uint16_t port,
                       std::chrono::milliseconds timeout) {
    const int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd < 0) {
        throw ConnectError("socket: " + errno_text(errno));
    }
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        throw ConnectError("bad address: " + host);
    }
    set_socket_timeout(fd, SO_RCVTIMEO, timeout);
    set_socket_timeout(fd, SO_SNDTIMEO, timeout);  // also bounds connect()
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
        const int err = errno;
        ::close(fd);
        throw ConnectError("connect " + host + ":" + std::to_string(port) + ": " +
                           errno_text(err));
    }
    return Socket(fd, host + ":" + std::to_string(port));
}

void Socket::set_read_timeout(std::chrono::milliseconds timeout) {
    set_socket_timeout(fd_, SO_RCVTIMEO, timeout);
}

void Socket::set_write_timeout(std::chrono::milliseconds timeout) {
    set_socket_timeout(fd_, SO_SNDTIMEO, timeout);
}

std::size_t Socket::read(char* buf, std::size_t len) {
    for (;;) {
        const ssize_t n = ::recv(fd_, buf, len, 0);
        if (n > 0) {
            return static_cast<std::size_t>(n);
        }
        if (n == 0) {
            return 0;
        }
        if (errno == EINTR) {
            continue;
        }
        if (errno == EAGAIN || errno == EWOULDBLOCK) {
            throw Timeout();
        }
        if (errno == ECONNRESET) {
            return 0;  // peer vanished: same as close for a reader
        }
        throw IoError("recv: " + errno_text(errno));
    }
}

void Socket::write(const char* data, std::size_t len) {
    std::size_t sent = 0;
    while (sent < len) {
        const ssize_t n = ::send(fd_, data + sent, len - sent, MSG_NOSIGNAL);
        if (n >= 0) {
            sent += static_cast<std::size_t>(n);
            continue;
        }
        if (errno == EINTR) {
            continue;
        }
        BrokenConnection err("send: " + errno_text(errno));
        err.bytes_written = sent;
        throw err;
    }
}

void Socket::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

Listener::~Listener() {
    close();
}

Listener::Listener(Listener&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), port_(std::exchange(other.port_, 0)) {}

Listener& Listener::operator=(Listener&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
        port_ = std::exchange(other.port_, 0);
    }
    return *this;
}

void Listener::open(std::uint16_t port) {
    const int fd = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC | SOCK_NONBLOCK, 0);
    if (fd < 0) {
        throw BindError("socket: " + errno_text(errno));
    }
    const int on = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &on, sizeof on);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
        const int err = errno;
        ::close(fd);
        std::string message = "cannot bind port " + std::to_string(port) + ": " + errno_text(err);
        if (err == EACCES && port < 1024) {
            message += " (ports below 1024 need elevated privileges)";
        }
        throw BindError(message);
    }
    if (::listen(fd, SOMAXCONN) != 0) {
        const int err = errno;
        ::close(fd);
        throw BindError("listen: " + errno_text(err));
    }

    sockaddr_in bound{};
    socklen_t bound_len = sizeof bound;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &bound_len);
    fd_ = fd;
    port_ = ntohs(bound.sin_port);
}

std::optional<Socket> Listener::accept() {
    sockaddr_in peer{};
    socklen_t peer_len = sizeof peer;
    const int fd = ::accept4(fd_, reinterpret_cast<sockaddr*>(&peer), &peer_len, SOCK_CLOEXEC);
    if (fd < 0) {
        switch (errno) {
            case EAGAIN:
            case EINTR:
            case ECONNABORTED:
            // resource pressure: the connection is lost but the listener is fine
            case EMFILE:
            case ENFILE:
            case ENOBUFS:
            case ENOMEM:
            case EPERM:
            case EPROTO:
                return std::nullopt;
            default:
                throw IoError("accept: " + errno_text(errno));
        }
    }
    return Socket(fd, format_peer(peer));
}

void Listener::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

}  // namespace tinyserve
