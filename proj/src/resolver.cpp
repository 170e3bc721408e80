#include "tinyserve/resolver.hpp"

#include <algorithm>
#include <cctype>
#include <system_error>

#include "tinyserve/log.hpp"

namespace tinyserve {

namespace fs = std::filesystem;

namespace {

// Componentwise prefix test; string comparison would let "/root" claim
// "/rootx/file".
bool is_path_prefix(const fs::path& root, const fs::path& candidate) {
    auto root_it = root.begin();
    auto cand_it = candidate.begin();
    for (; root_it != root.end(); ++root_it, ++cand_it) {
        if (cand_it == candidate.end() || *cand_it != *root_it) {
            return false;
        }
    }
    return true;
}

// One weakly_canonical pass stops resolving symlinks at the first
// non-existing component ("nofile/../link" comes back with "link" still a
// link). Iterate to a fixpoint so anything resolvable is resolved before the
// containment check.
fs::path canonicalize_fully(const fs::path& joined, std::error_code& ec) {
    fs::path current = joined;
    for (int pass = 0; pass < 32; ++pass) {
        fs::path next = fs::weakly_canonical(current, ec);
        if (ec || next == current) {
            return next;
        }
        current = std::move(next);
    }
    ec = std::make_error_code(std::errc::too_many_symbolic_link_levels);
    return current;
}

}  // namespace

const MimeTable& MimeTable::builtin() {
    static const MimeTable table{
        {
            {"html", "text/html"},
            {"htm", "text/html"},
            {"js", "text/javascript"},
            {"css", "text/css"},
            {"txt", "text/plain"},
            {"png", "image/png"},
            {"jpg", "image/jpeg"},
            {"jpeg", "image/jpeg"},
            {"gif", "image/gif"},
            {"ico", "image/x-icon"},
            {"json", "application/json"},
        },
        "application/octet-stream",
    };
    return table;
}

std::string target_to_relative(std::string_view target) {
    if (!target.empty() && target.front() == '/') {
        target.remove_prefix(1);
    }
    if (target.empty()) {
        return "index.html";
    }
    return std::string(target);
}

ResolvedResource resolve_within_root(const fs::path& root, const std::string& relative) {
    ResolvedResource resource;
    resource.requested_name = relative;

    std::error_code ec;
    const fs::path canonical_root = fs::canonical(root, ec);
    if (ec) {
        log_warning("document root " + root.string() + ": " + ec.message());
        return resource;
    }

    const fs::path joined = root / fs::path(relative);
    const fs::path canonical = canonicalize_fully(joined, ec);
    if (ec) {
        // the original program's catch-all turns any open failure into
        // "file does not exist"
        log_warning("resolve " + joined.string() + ": " + ec.message());
        return resource;
    }

    if (!is_path_prefix(canonical_root, canonical)) {
        resource.outcome = ResolvedResource::Outcome::forbidden;
        return resource;
    }

    const fs::file_status status = fs::status(canonical, ec);
    if (ec && ec != std::errc::no_such_file_or_directory &&
        ec != std::errc::not_a_directory) {
        log_warning("stat " + canonical.string() + ": " + ec.message());
        return resource;
    }
    if (!fs::is_regular_file(status)) {
        return resource;  // absent, or a directory/special file: miss
    }

    const std::uint64_t size = fs::file_size(canonical, ec);
    if (ec) {
        log_warning("size " + canonical.string() + ": " + ec.message());
        return resource;
    }

    resource.outcome = ResolvedResource::Outcome::hit;
    resource.canonical_path = canonical;
    resource.length_bytes = size;
    return resource;
}

std::string content_type_for(std::string_view relative, FidelityMode mode, const MimeTable& table) {
    if (mode == FidelityMode::paper) {
        return "text/html";  // the original program hard-codes the type
    }
    const std::size_t dot = relative.rfind('.');
    if (dot == std::string_view::npos) {
        return table.default_type;
    }
    std::string extension(relative.substr(dot + 1));
    std::transform(extension.begin(), extension.end(), extension.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& [ext, type] : table.entries) {
        if (ext == extension) {
            return type;
        }
    }
    return table.default_type;
}

}  // namespace tinyserve
