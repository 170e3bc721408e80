#include "cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace tinyserve::cli {

ParseOutcome parse_args(const std::vector<std::string>& args) {
    ParseOutcome outcome;
    ServerConfig& config = outcome.config;

    std::string root;
    std::string mode = "strict";
    std::string concurrency = "sequential";

    CLI::App app{"tinyserve: a minimal HTTP/1.0 static file server"};
    app.add_option("--port", config.port, "port to listen on; 0 picks an ephemeral port")
        ->capture_default_str();
    app.add_option("--root", root,
                   "document root (default: $TINYSERVE_ROOT, else the working directory)");
    app.add_option("--mode", mode, "paper reproduces the original quirks, strict corrects them")
        ->check(CLI::IsMember({"paper", "strict"}))
        ->capture_default_str();
    app.add_option("--concurrency", concurrency, "connection handling")
        ->check(CLI::IsMember({"sequential", "per-connection"}))
        ->capture_default_str();
    app.add_flag("--verbose", config.verbose, "annotate connection logs with error tags");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        outcome.exit_code = app.exit(e);
        return outcome;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        outcome.exit_code = 2;
        return outcome;
    }

    if (!root.empty()) {
        config.root = root;
    } else if (const char* env_root = std::getenv("TINYSERVE_ROOT"); env_root && *env_root) {
        config.root = env_root;
    } else {
        config.root = std::filesystem::current_path();
    }
    config.mode = mode == "paper" ? FidelityMode::paper : FidelityMode::strict;
    config.concurrency =
        concurrency == "per-connection" ? Concurrency::per_connection : Concurrency::sequential;

    outcome.run = true;
    return outcome;
}

namespace {

Server* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) {
        g_server->shutdown();  // async-signal-safe
    }
}

}  // namespace

int run(const ServerConfig& config) {
    std::error_code ec;
    if (!std::filesystem::is_directory(config.root, ec)) {
        std::cerr << "tinyserve: document root '" << config.root.string()
                  << "' is not a directory\n";
        return 1;
    }

    Server server(config);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);

    try {
        server.bind();
    } catch (const BindError& e) {
        std::cerr << "tinyserve: " << e.what() << "\n";
        return 1;
    }

    std::cout << "The HTTP Server is running..\n";
    std::cout << "Stop server using Ctrl + C\n";
    std::cout << "listening on port " << server.port() << " (root: " << config.root.string()
              << ", mode: " << to_string(config.mode) << ")" << std::endl;

    server.serve_forever();

    std::signal(SIGINT, SIG_DFL);
    std::signal(SIGTERM, SIG_DFL);
    g_server = nullptr;
    return 0;
}

}  // namespace tinyserve::cli
