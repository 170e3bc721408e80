#include "tinyserve/protocol.hpp"

#include <cctype>
#include <stdexcept>

namespace tinyserve {

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

}  // namespace

std::string_view to_string(FidelityMode mode) {
    return mode == FidelityMode::paper ? "paper" : "strict";
}

BodySource BodySource::from_bytes(std::string bytes) {
    BodySource source;
    source.kind = Kind::bytes;
    source.length = bytes.size();
    source.data = std::move(bytes);
    return source;
}

BodySource BodySource::from_file(std::filesystem::path path, std::uint64_t size) {
    BodySource source;
    source.kind = Kind::file;
    source.path = std::move(path);
    source.length = size;
    return source;
}

void HttpResponse::set_header(std::string_view name, std::string_view value) {
    for (auto& [existing, existing_value] : headers) {
        if (iequals(existing, name)) {
            existing_value = std::string(value);
            return;
        }
    }
    headers.emplace_back(std::string(name), std::string(value));
}

const std::string* HttpResponse::find_header(std::string_view name) const {
    for (const auto& [existing, value] : headers) {
        if (iequals(existing, name)) {
            return &value;
        }
    }
    return nullptr;
}

std::string_view reason_phrase(int status_code) {
    switch (status_code) {
        case 200: return "OK";
        case 400: return "Bad Request";
        case 404: return "Not Found";
        case 501: return "Not Implemented";
        default: return "Unknown";
    }
}

std::string format_status_line(int code, std::string_view reason, std::string_view version) {
    if (code < 100 || code > 599) {
        throw std::invalid_argument("status code out of range: " + std::to_string(code));
    }
    std::string line;
    line.reserve(version.size() + reason.size() + 5);
    line.append(version);
    line.push_back(' ');
    line.append(std::to_string(code));
    line.push_back(' ');
    line.append(reason);
    return line;
}

std::string serialize_head(const HttpResponse& response, std::string_view version) {
    std::string head = format_status_line(response.status_code, response.reason, version);
    head.append("\r\n");
    for (const auto& [name, value] : response.headers) {
        head.append(name);
        head.append(": ");
        head.append(value);
        head.append("\r\n");
    }
    head.append("\r\n");
    return head;
}

}  // namespace tinyserve
