#include "tinyserve/response.hpp"

#include <algorithm>
#include <fstream>

namespace tinyserve {

namespace {

constexpr std::string_view kServerName = "Simple HTTP Server";

std::string html_page(std::string_view title, std::string_view heading) {
    std::string page;
    page.reserve(72 + title.size() + heading.size());
    page.append("<HTML><HEAD><TITLE>");
    page.append(title);
    page.append("</TITLE></HEAD><BODY><center><h1>");
    page.append(heading);
    page.append("</h1></center></BODY></HTML>");
    return page;
}

HttpResponse page_response(int code, std::string body) {
    HttpResponse response;
    response.status_code = code;
    response.reason = std::string(reason_phrase(code));
    response.set_header("Server", kServerName);
    response.set_header("Content-type", "text/html");
    response.set_header("Content-Length", std::to_string(body.size()));
    response.body = BodySource::from_bytes(std::move(body));
    return response;
}

}  // namespace

std::optional<HttpResponse> build_ok(const ResolvedResource& resource, FidelityMode mode,
                                     const MimeTable& table) {
    std::ifstream probe(resource.canonical_path, std::ios::binary);
    if (!probe) {
        return std::nullopt;  // vanished between resolve and open
    }
    probe.close();

    HttpResponse response;
    response.status_code = 200;
    response.reason = "OK";
    response.set_header("Server", kServerName);
    response.set_header("Content-type", content_type_for(resource.requested_name, mode, table));
    response.set_header("Content-Length", std::to_string(resource.length_bytes));
    response.body = BodySource::from_file(resource.canonical_path, resource.length_bytes);
    return response;
}

std::string not_found_body(std::string_view file_name) {
    std::string heading("404: The file ");
    heading.append(file_name);
    heading.append(" is not found");
    return html_page("404 Not Found", heading);
}

HttpResponse build_not_found(std::string_view file_name, FidelityMode mode) {
    // the original program's else branch still answers "HTTP/1.0 200 OK"
    const int code = mode == FidelityMode::paper ? 200 : 404;
    return page_response(code, not_found_body(file_name));
}

HttpResponse build_bad_request() {
    return page_response(400, html_page("400 Bad Request", "400: Bad request"));
}

HttpResponse build_not_implemented(std::string_view method) {
    std::string heading("501: Method ");
    heading.append(method);
    heading.append(" not implemented");
    return page_response(501, html_page("501 Not Implemented", heading));
}

std::uint64_t stream_body(const BodySource& source, ByteWriter& sink) {
    if (source.kind == BodySource::Kind::bytes) {
        if (!source.data.empty()) {
            sink.write(source.data.data(), source.data.size());
        }
        return source.data.size();
    }

    std::ifstream in(source.path, std::ios::binary);
    if (!in) {
        TruncatedBody err("cannot open " + source.path.string());
        throw err;
    }
    char chunk[kFileChunkSize];
    std::uint64_t total = 0;
    std::uint64_t remaining = source.length;
    while (remaining > 0) {
        const auto want = static_cast<std::streamsize>(
            std::min<std::uint64_t>(sizeof chunk, remaining));
        in.read(chunk, want);
        const std::streamsize got = in.gcount();
        if (got <= 0) {
            TruncatedBody err("file ended " + std::to_string(remaining) +
                              " bytes short: " + source.path.string());
            err.bytes_written = total;
            throw err;
        }
        try {
            sink.write(chunk, static_cast<std::size_t>(got));
        } catch (BrokenConnection& e) {
            e.bytes_written += total;
            throw;
        }
        total += static_cast<std::uint64_t>(got);
        remaining -= static_cast<std::uint64_t>(got);
    }
    return total;
}

std::uint64_t emit_response(const HttpResponse& response, ByteWriter& sink,
                            std::string_view version) {
    const std::string head = serialize_head(response, version);
    sink.write(head.data(), head.size());
    std::uint64_t body_bytes = 0;
    try {
        body_bytes = stream_body(response.body, sink);
    } catch (BrokenConnection& e) {
        e.bytes_written += head.size();
        throw;
    } catch (TruncatedBody& e) {
        e.bytes_written += head.size();
        throw;
    }
    sink.flush();
    return head.size() + body_bytes;
}

}  // namespace tinyserve
