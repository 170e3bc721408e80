#include "tinyserve/server.hpp"

#include <fcntl.h>
#include <poll.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <future>
#include <iostream>
#include <vector>

#include "tinyserve/log.hpp"
#include "tinyserve/resolver.hpp"
#include "tinyserve/response.hpp"

namespace tinyserve {

std::string format_outcome_line(const ConnectionOutcome& outcome, std::string_view timestamp) {
    std::string line;
    line.append(timestamp);
    line.push_back(' ');
    line.append(outcome.peer);
    line.append(" \"");
    line.append(outcome.request_line.value_or(""));
    line.append("\" ");
    line.append(outcome.status_sent ? std::to_string(*outcome.status_sent) : "-");
    line.push_back(' ');
    line.append(std::to_string(outcome.bytes_sent));
    return line;
}

Server::Server(ServerConfig config) : config_(std::move(config)) {
    if (::pipe2(wake_fds_, O_CLOEXEC | O_NONBLOCK) != 0) {
        throw IoError("pipe2: " + std::string(std::strerror(errno)));
    }
}

Server::~Server() {
    ::close(wake_fds_[0]);
    ::close(wake_fds_[1]);
}

void Server::bind() {
    listener_.open(config_.port);
}

void Server::shutdown() {
    // only atomics and write() here: this runs from signal handlers
    if (!stop_.exchange(true)) {
        const char byte = 0;
        [[maybe_unused]] const ssize_t n = ::write(wake_fds_[1], &byte, 1);
    }
}

void Server::serve_forever() {
    if (!listener_.is_open()) {
        throw std::logic_error("serve_forever called before bind");
    }
    std::vector<std::future<void>> inflight;
    while (!stop_.load()) {
        pollfd fds[2] = {
            {listener_.fd(), POLLIN, 0},
            {wake_fds_[0], POLLIN, 0},
        };
        const int rc = ::poll(fds, 2, -1);
        if (rc < 0) {
            if (errno == EINTR) {
                continue;
            }
            log_warning("poll: " + std::string(std::strerror(errno)));
            break;
        }
        if (stop_.load()) {
            break;
        }
        if (fds[0].revents & (POLLERR | POLLNVAL)) {
            log_warning("listener descriptor failed");
            break;
        }
        if (!(fds[0].revents & POLLIN)) {
            continue;
        }

        std::optional<Socket> conn;
        try {
            conn = listener_.accept();
        } catch (const std::exception& e) {
            log_warning(std::string("listener failed: ") + e.what());
            break;
        }
        if (!conn) {
            continue;  // transient accept failure
        }
        conn->set_read_timeout(config_.read_timeout);
        conn->set_write_timeout(config_.read_timeout);

        if (config_.concurrency == Concurrency::sequential) {
            const ConnectionOutcome outcome = handle_connection(*conn);
            conn->close();
            log_outcome(outcome);
        } else {
            std::erase_if(inflight, [](std::future<void>& f) {
                return f.wait_for(std::chrono::seconds(0)) == std::future_status::ready;
            });
            inflight.push_back(std::async(std::launch::async,
                                          [this, c = std::move(*conn)]() mutable {
                                              const ConnectionOutcome outcome = handle_connection(c);
                                              c.close();
                                              log_outcome(outcome);
                                          }));
        }
    }
    listener_.close();
    for (auto& f : inflight) {
        f.wait();  // let in-flight connections finish
    }
}

void Server::drain_request(Socket& conn, ConnectionOutcome& outcome) const {
    try {
        drain_headers(conn, config_.mode);
    } catch (const Timeout&) {
        // headers never finished arriving; respond anyway
        outcome.error = "drain-timeout";
    }
}

ConnectionOutcome Server::handle_connection(Socket& conn) const {
    ConnectionOutcome outcome;
    outcome.peer = conn.peer();
    const bool strict = config_.mode == FidelityMode::strict;

    const auto send = [&](const HttpResponse& response) {
        outcome.bytes_sent = emit_response(response, conn, kHttpVersion);
        outcome.status_sent = response.status_code;
    };

    try {
        const RawRequestLine raw = read_request_line(conn, config_.max_request_line);
        outcome.request_line = raw.text;

        const std::optional<HttpRequest> request = parse_request_line(raw);
        if (!request) {
            // the original program dies in nextToken() here; paper mode
            // closes with no response
            outcome.error = "malformed-request-line";
            if (strict) {
                send(build_bad_request());
            }
            return outcome;
        }

        if (request->method != "GET") {
            // no else-branch for the GET test in the original program
            if (strict) {
                drain_request(conn, outcome);
                send(build_not_implemented(request->method));
            } else {
                outcome.error = "method-not-implemented";
            }
            return outcome;
        }

        drain_request(conn, outcome);  // no-op in paper mode
        const std::string relative = target_to_relative(request->target);
        const ResolvedResource resource = resolve_within_root(config_.root, relative);

        std::optional<HttpResponse> response;
        if (resource.outcome == ResolvedResource::Outcome::hit) {
            response = build_ok(resource, config_.mode, MimeTable::builtin());
        }
        if (!response) {
            // miss, forbidden, or the file vanished; all get the 404 page
            response = build_not_found(resource.requested_name, config_.mode);
        }
        send(*response);
    } catch (const EmptyRequest&) {
        outcome.error = "empty-request";
    } catch (const RequestLineTooLong&) {
        outcome.error = "request-line-too-long";
        if (strict) {
            try {
                send(build_bad_request());
            } catch (const std::exception&) {
                // peer already gone; the error tag stands
            }
        }
    } catch (const Timeout&) {
        outcome.error = "read-timeout";
    } catch (const BrokenConnection& e) {
        outcome.bytes_sent = e.bytes_written;
        outcome.error = "broken-connection";
    } catch (const TruncatedBody& e) {
        outcome.bytes_sent = e.bytes_written;
        outcome.error = "truncated-body";
    } catch (const std::exception& e) {
        outcome.error = std::string("internal: ") + e.what();
    }
    return outcome;
}

void Server::log_outcome(const ConnectionOutcome& outcome) const {
    std::string line = format_outcome_line(outcome, iso8601_utc_now());
    if (config_.verbose && outcome.error) {
        line += " (" + *outcome.error + ")";
    }
    std::cerr << line << "\n";
}

}  // namespace tinyserve
