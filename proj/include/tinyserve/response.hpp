#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tinyserve/io.hpp"
#include "tinyserve/protocol.hpp"
#include "tinyserve/resolver.hpp"

namespace tinyserve {

// File bodies go out in reads of at most this many bytes each.
inline constexpr std::size_t kFileChunkSize = 1024;

// 200 response for a resolved hit: Server, Content-type, Content-Length
// headers in that order, body streamed from the file. Returns nullopt when
// the file vanished between resolve and open (callers fall back to the 404
// path).
std::optional<HttpResponse> build_ok(const ResolvedResource& resource, FidelityMode mode,
                                     const MimeTable& table);

// The canonical 404 page, byte-exact.
std::string not_found_body(std::string_view file_name);

// 404 page response. Status is 200 "OK" in paper mode (the original program
// answers missing files with 200) and 404 "Not Found" in strict mode; the
// body is identical in both.
HttpResponse build_not_found(std::string_view file_name, FidelityMode mode);

// strict-mode responses for a malformed request line / a non-GET method,
// using the same page skeleton as the 404 body.
HttpResponse build_bad_request();
HttpResponse build_not_implemented(std::string_view method);

// bytes body: one write of the whole buffer. file body: reads of at most
// kFileChunkSize bytes, each written immediately, exactly source.length bytes
// total. Returns bytes written; throws BrokenConnection (sink failure) or
// TruncatedBody (file ended early), each carrying bytes written so far.
std::uint64_t stream_body(const BodySource& source, ByteWriter& sink);

// serialize_head + stream_body + flush. Returns head+body byte total; a
// propagated BrokenConnection/TruncatedBody carries the whole-wire count.
std::uint64_t emit_response(const HttpResponse& response, ByteWriter& sink,
                            std::string_view version);

}  // namespace tinyserve
