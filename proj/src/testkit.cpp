#include "tinyserve/testkit.hpp"

#include <cctype>
#include <charconv>
#include <cstring>

#include "tinyserve/net.hpp"

namespace tinyserve::testkit {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::string_view trim_spaces(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<int> status_from_line(std::string_view line) {
    // second whitespace token, parsed as an integer
    std::size_t i = 0;
    for (int token = 0; token < 2; ++token) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (token == 1) {
            int code = 0;
            const auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + i, code);
            if (ec != std::errc() || ptr != line.data() + i || start == i) {
                return std::nullopt;
            }
            return code;
        }
    }
    return std::nullopt;
}

}  // namespace

const std::string* CapturedResponse::find_header(std::string_view name) const {
    for (const auto& [header_name, value] : headers) {
        if (iequals(header_name, name)) {
            return &value;
        }
    }
    return nullptr;
}

CapturedResponse split_response(std::string raw) {
    CapturedResponse capture;
    capture.raw = std::move(raw);
    const std::string& s = capture.raw;

    std::vector<std::string> lines;
    std::size_t pos = 0;
    std::size_t body_start = std::string::npos;
    while (pos < s.size()) {
        const std::size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) {
            break;
        }
        std::string line = s.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        pos = nl + 1;
        if (line.empty()) {
            body_start = pos;
            break;
        }
        lines.push_back(std::move(line));
    }

    if (body_start == std::string::npos || lines.empty()) {
        capture.body = s;  // no head/body separator: headerless tolerance
        return capture;
    }

    capture.status_line = lines.front();
    capture.status_code = status_from_line(lines.front());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) {
            continue;
        }
        capture.headers.emplace_back(std::string(trim_spaces(line.substr(0, colon))),
                                     std::string(trim_spaces(line.substr(colon + 1))));
    }
    capture.body = s.substr(body_start);
    return capture;
}

CapturedResponse raw_request(const std::string& host, std::uint16_t port,
                             std::string_view request_bytes,
                             std::chrono::milliseconds read_timeout) {
    Socket conn = Socket::connect(host, port, read_timeout);
    if (!request_bytes.empty()) {
        conn.write(request_bytes.data(), request_bytes.size());
    }

    std::string raw;
    char buf[4096];
    const auto deadline = std::chrono::steady_clock::now() + read_timeout;
    for (;;) {
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) {
            if (raw.empty()) {
                throw EmptyCapture();
            }
            break;
        }
        conn.set_read_timeout(remaining);
        try {
            const std::size_t n = conn.read(buf, sizeof buf);
            if (n == 0) {
                break;  // peer closed: capture complete
            }
            raw.append(buf, n);
        } catch (const Timeout&) {
            if (raw.empty()) {
                throw EmptyCapture();
            }
            break;
        }
    }
    return split_response(std::move(raw));
}

std::size_t StringReader::read(char* buf, std::size_t len) {
    if (pos_ >= data_.size()) {
        if (on_exhaust_ == OnExhaust::timeout) {
            throw Timeout();
        }
        return 0;
    }
    const std::size_t n = std::min(len, data_.size() - pos_);
    std::memcpy(buf, data_.data() + pos_, n);
    pos_ += n;
    return n;
}

void RecordingSink::write(const char* data, std::size_t len) {
    write_sizes_.push_back(len);
    payload_.append(data, len);
}

}  // namespace tinyserve::testkit
