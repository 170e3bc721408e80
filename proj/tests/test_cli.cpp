#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "cli.hpp"
#include "support.hpp"
#include "tinyserve/testkit.hpp"

using namespace tinyserve;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace {

const std::string kBinary = TINYSERVE_BIN;

std::uint16_t port_from_stdout(const std::string& out) {
    const std::string needle = "listening on port ";
    const auto pos = out.find(needle);
    REQUIRE(pos != std::string::npos);
    return static_cast<std::uint16_t>(std::stoi(out.substr(pos + needle.size())));
}

}  // namespace

TEST_CASE("parse_args applies all defaults") {
    ::unsetenv("TINYSERVE_ROOT");
    const auto parsed = cli::parse_args({});
    REQUIRE(parsed.run);
    CHECK(parsed.config.port == 8080);
    CHECK(parsed.config.root == fs::current_path());
    CHECK(parsed.config.mode == FidelityMode::strict);
    CHECK(parsed.config.concurrency == Concurrency::sequential);
    CHECK_FALSE(parsed.config.verbose);
}

TEST_CASE("parse_args reads every flag") {
    const auto parsed = cli::parse_args({"--port", "0", "--root", "/tmp", "--mode", "paper",
                                         "--concurrency", "per-connection", "--verbose"});
    REQUIRE(parsed.run);
    CHECK(parsed.config.port == 0);
    CHECK(parsed.config.root == fs::path("/tmp"));
    CHECK(parsed.config.mode == FidelityMode::paper);
    CHECK(parsed.config.concurrency == Concurrency::per_connection);
    CHECK(parsed.config.verbose);
}

TEST_CASE("parse_args falls back to TINYSERVE_ROOT, flag wins") {
    ::setenv("TINYSERVE_ROOT", "/tmp", 1);
    const auto from_env = cli::parse_args({});
    REQUIRE(from_env.run);
    CHECK(from_env.config.root == fs::path("/tmp"));

    const auto from_flag = cli::parse_args({"--root", "/var"});
    REQUIRE(from_flag.run);
    CHECK(from_flag.config.root == fs::path("/var"));
    ::unsetenv("TINYSERVE_ROOT");
}

TEST_CASE("parse_args rejects bad input with exit code 2") {
    CHECK(cli::parse_args({"--mode", "papers"}).exit_code == 2);
    CHECK_FALSE(cli::parse_args({"--mode", "papers"}).run);
    CHECK(cli::parse_args({"--concurrency", "threads"}).exit_code == 2);
    CHECK(cli::parse_args({"--no-such-flag"}).exit_code == 2);
    CHECK(cli::parse_args({"--port", "port80"}).exit_code == 2);
    CHECK(cli::parse_args({"--port", "70000"}).exit_code == 2);
}

TEST_CASE("parse_args handles --help without running") {
    const auto parsed = cli::parse_args({"--help"});
    CHECK_FALSE(parsed.run);
    CHECK(parsed.exit_code == 0);
}

TEST_CASE("spawned binary exit codes") {
    SUBCASE("usage error is 2") {
        support::SpawnedProcess proc(kBinary, {"--bogus"});
        const auto code = proc.wait_exit(3000ms);
        REQUIRE(code.has_value());
        CHECK(*code == 2);
    }
    SUBCASE("missing root is 1") {
        support::SpawnedProcess proc(kBinary, {"--root", "/no/such/dir", "--port", "0"});
        const auto code = proc.wait_exit(3000ms);
        REQUIRE(code.has_value());
        CHECK(*code == 1);
        CHECK(proc.captured_stderr().find("not a directory") != std::string::npos);
    }
    SUBCASE("help is 0") {
        support::SpawnedProcess proc(kBinary, {"--help"});
        const auto code = proc.wait_exit(3000ms);
        REQUIRE(code.has_value());
        CHECK(*code == 0);
    }
}

TEST_CASE("spawned server prints the banner, serves, and exits 0 on SIGINT") {
    support::TempDir root;
    support::write_file(root.path() / "index.html", "cli served");

    support::SpawnedProcess proc(kBinary, {"--port", "0", "--root", root.path().string()});
    REQUIRE(proc.wait_for_stdout("listening on port ", 3000ms));
    const std::uint16_t port = port_from_stdout(proc.captured_stdout());

    const auto capture =
        testkit::raw_request("127.0.0.1", port, "GET / HTTP/1.0\r\n\r\n", 2000ms);
    REQUIRE(capture.status_code.has_value());
    CHECK(*capture.status_code == 200);
    CHECK(capture.body == "cli served");

    proc.signal(SIGINT);
    const auto code = proc.wait_exit(5000ms);
    REQUIRE(code.has_value());
    CHECK(*code == 0);
    CHECK(proc.captured_stdout().find("The HTTP Server is running..") != std::string::npos);
    CHECK(proc.captured_stdout().find("Stop server using Ctrl + C") != std::string::npos);
}

TEST_CASE("spawned server defaults to port 8080") {
    support::TempDir root;
    support::SpawnedProcess proc(kBinary, {"--root", root.path().string()});
    REQUIRE(proc.wait_for_stdout("listening on port ", 3000ms));
    CHECK(port_from_stdout(proc.captured_stdout()) == 8080);

    proc.signal(SIGTERM);
    const auto code = proc.wait_exit(5000ms);
    REQUIRE(code.has_value());
    CHECK(*code == 0);
}

TEST_CASE("paper mode via the CLI reproduces the 200-for-404 quirk") {
    support::TempDir root;
    support::SpawnedProcess proc(
        kBinary, {"--port", "0", "--root", root.path().string(), "--mode", "paper"});
    REQUIRE(proc.wait_for_stdout("listening on port ", 3000ms));
    const std::uint16_t port = port_from_stdout(proc.captured_stdout());

    const auto capture =
        testkit::raw_request("127.0.0.1", port, "GET /gone.html HTTP/1.0\r\n\r\n", 2000ms);
    REQUIRE(capture.status_code.has_value());
    CHECK(*capture.status_code == 200);
    CHECK(capture.body.find("404: The file gone.html is not found") != std::string::npos);

    proc.signal(SIGINT);
    const auto code = proc.wait_exit(5000ms);
    REQUIRE(code.has_value());
    CHECK(*code == 0);
}
