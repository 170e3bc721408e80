#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "tinyserve/net.hpp"
#include "tinyserve/protocol.hpp"
#include "tinyserve/request_parser.hpp"

namespace tinyserve {

// sequential: one connection is fully served before the next accept (the
// original program's model). per_connection: each connection gets its own
// execution context.
enum class Concurrency { sequential, per_connection };

struct ServerConfig {
    std::uint16_t port = 8080;
    std::filesystem::path root;
    FidelityMode mode = FidelityMode::strict;
    Concurrency concurrency = Concurrency::sequential;
    std::chrono::milliseconds read_timeout{5000};
    std::size_t max_request_line = kDefaultMaxRequestLine;
    bool verbose = false;
};

// Log record for one served connection. status_sent absent means the
// connection was closed without a response.
struct ConnectionOutcome {
    std::string peer;
    std::optional<std::string> request_line;
    std::optional<int> status_sent;
    std::uint64_t bytes_sent = 0;
    std::optional<std::string> error;
};

// `<ISO8601> <peer> "<request line>" <status|-> <bytes_sent>`
std::string format_outcome_line(const ConnectionOutcome& outcome, std::string_view timestamp);

class Server {
public:
    explicit Server(ServerConfig config);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds the listener; after this port() reports the actual port (useful
    // with config.port == 0). Throws BindError.
    void bind();
    std::uint16_t port() const { return listener_.port(); }

    // Accept loop; returns once shutdown() has fired and in-flight
    // connections have finished. Accept errors are logged and the loop
    // continues; a fatal listener failure ends it.
    void serve_forever();

    // Fires the stop signal. Async-signal-safe and idempotent.
    void shutdown();

    // Drives one connection through parse -> resolve -> respond. Never
    // throws; every failure lands in the outcome's error tag.
    ConnectionOutcome handle_connection(Socket& conn) const;

    const ServerConfig& config() const { return config_; }

private:
    void log_outcome(const ConnectionOutcome& outcome) const;
    void drain_request(Socket& conn, ConnectionOutcome& outcome) const;

    ServerConfig config_;
    Listener listener_;
    int wake_fds_[2] = {-1, -1};
    std::atomic<bool> stop_{false};
};

}  // namespace tinyserve
