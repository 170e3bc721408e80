#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tinyserve/protocol.hpp"

namespace tinyserve {

struct ResolvedResource {
    enum class Outcome { hit, miss, forbidden };

    Outcome outcome = Outcome::miss;
    std::string requested_name;              // target minus leading "/", or "index.html"
    std::filesystem::path canonical_path;    // hit only
    std::uint64_t length_bytes = 0;          // hit only
};

struct MimeTable {
    std::vector<std::pair<std::string, std::string>> entries;  // lowercase extension -> media type
    std::string default_type;

    // html, htm, js, css, txt, png, jpg, jpeg, gif, ico, json;
    // everything else application/octet-stream.
    static const MimeTable& builtin();
};

// Strips exactly one leading "/"; an empty result becomes the default
// document "index.html".
std::string target_to_relative(std::string_view target);

// Joins root and relative, canonicalizes (".", "..", symlinks), and checks
// the result stays under the canonical root: outside -> forbidden, absent or
// not a regular file -> miss, else hit with the file's true byte length.
// Unexpected filesystem errors degrade to miss with a logged warning.
ResolvedResource resolve_within_root(const std::filesystem::path& root, const std::string& relative);

// paper mode answers text/html for everything; strict mode looks up the
// lowercase extension after the final "." in the table.
std::string content_type_for(std::string_view relative, FidelityMode mode, const MimeTable& table);

}  // namespace tinyserve
