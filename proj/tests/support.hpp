#pragma once

// Shared helpers for the test binaries: fixture plumbing, independent
// oracles, and a tiny process harness for driving the CLI. Everything here
// stays independent of the library code it is used to check.

#include <fcntl.h>
#include <limits.h>
#include <poll.h>
#include <signal.h>
#include <stdlib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace support {

namespace fs = std::filesystem;

inline fs::path test_data_dir() {
    return fs::path(TINYSERVE_TEST_DATA_DIR);
}

class TempDir {
public:
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "tinyserve-XXXXXX").string();
        if (::mkdtemp(tmpl.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string random_bytes(std::mt19937& rng, std::size_t size) {
    std::uniform_int_distribution<int> byte(0, 255);
    std::string out(size, '\0');
    for (auto& c : out) {
        c = static_cast<char>(byte(rng));
    }
    return out;
}

// ---- parser oracle ---------------------------------------------------

// Reference whitespace split over space/tab runs, written separately from
// the library's tokenizer.
inline std::vector<std::string> reference_split(const std::string& line) {
    std::vector<std::string> tokens;
    std::string current;
    for (const char c : line) {
        if (c == ' ' || c == '\t') {
            if (!current.empty()) {
                tokens.push_back(current);
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        tokens.push_back(current);
    }
    return tokens;
}

// ---- jail oracle ------------------------------------------------------

// Kernel-side canonicalization via realpath(3), compared componentwise.
inline std::optional<std::string> realpath_of(const fs::path& p) {
    char buf[PATH_MAX];
    if (::realpath(p.c_str(), buf) == nullptr) {
        return std::nullopt;
    }
    return std::string(buf);
}

inline bool oracle_inside_root(const fs::path& root, const fs::path& candidate) {
    const auto canon_root = realpath_of(root);
    const auto canon_candidate = realpath_of(candidate);
    if (!canon_root || !canon_candidate) {
        return false;
    }
    if (*canon_candidate == *canon_root) {
        return true;
    }
    return canon_candidate->size() > canon_root->size() &&
           canon_candidate->compare(0, canon_root->size(), *canon_root) == 0 &&
           (*canon_candidate)[canon_root->size()] == '/';
}

// ---- process harness --------------------------------------------------

inline int open_fd_count() {
    int count = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator("/proc/self/fd")) {
        ++count;
    }
    return count;
}

// Forked child with piped stdout/stderr; used to test CLI exit codes,
// banner output and signal handling.
class SpawnedProcess {
public:
    SpawnedProcess(const std::string& binary, const std::vector<std::string>& args) {
        int out_pipe[2];
        int err_pipe[2];
        if (::pipe2(out_pipe, O_CLOEXEC) != 0 || ::pipe2(err_pipe, O_CLOEXEC) != 0) {
            throw std::runtime_error("pipe2 failed");
        }
        pid_ = ::fork();
        if (pid_ < 0) {
            throw std::runtime_error("fork failed");
        }
        if (pid_ == 0) {
            ::dup2(out_pipe[1], STDOUT_FILENO);
            ::dup2(err_pipe[1], STDERR_FILENO);
            std::vector<char*> argv;
            argv.push_back(const_cast<char*>(binary.c_str()));
            for (const auto& a : args) {
                argv.push_back(const_cast<char*>(a.c_str()));
            }
            argv.push_back(nullptr);
            ::execv(binary.c_str(), argv.data());
            ::_exit(127);
        }
        ::close(out_pipe[1]);
        ::close(err_pipe[1]);
        out_fd_ = out_pipe[0];
        err_fd_ = err_pipe[0];
    }

    ~SpawnedProcess() {
        if (pid_ > 0) {
            ::kill(pid_, SIGKILL);
            int status = 0;
            ::waitpid(pid_, &status, 0);
        }
        if (out_fd_ >= 0) ::close(out_fd_);
        if (err_fd_ >= 0) ::close(err_fd_);
    }

    pid_t pid() const { return pid_; }

    void signal(int signum) { ::kill(pid_, signum); }

    // Reads stdout until `needle` shows up or the deadline passes.
    bool wait_for_stdout(const std::string& needle, std::chrono::milliseconds timeout) {
        const auto deadline = std::chrono::steady_clock::now() + timeout;
        while (stdout_.find(needle) == std::string::npos) {
            const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - std::chrono::steady_clock::now());
            if (remaining.count() <= 0) {
                return false;
            }
            pollfd pfd{out_fd_, POLLIN, 0};
            const int rc = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
            if (rc <= 0) {
                continue;
            }
            char buf[4096];
            const ssize_t n = ::read(out_fd_, buf, sizeof buf);
            if (n <= 0) {
                return stdout_.find(needle) != std::string::npos;
            }
            stdout_.append(buf, static_cast<std::size_t>(n));
        }
        return true;
    }

    // Waits for exit, draining stdout/stderr. nullopt on deadline.
    std::optional<int> wait_exit(std::chrono::milliseconds timeout) {
        const auto deadline = std::chrono::steady_clock::now() + timeout;
        for (;;) {
            drain_pipes();
            int status = 0;
            const pid_t rc = ::waitpid(pid_, &status, WNOHANG);
            if (rc == pid_) {
                pid_ = -1;
                drain_pipes();
                if (WIFEXITED(status)) {
                    return WEXITSTATUS(status);
                }
                return -WTERMSIG(status);
            }
            if (std::chrono::steady_clock::now() >= deadline) {
                return std::nullopt;
            }
            ::usleep(10'000);
        }
    }

    const std::string& captured_stdout() const { return stdout_; }
    const std::string& captured_stderr() const { return stderr_; }

private:
    void drain_pipes() {
        drain(out_fd_, stdout_);
        drain(err_fd_, stderr_);
    }

    static void drain(int fd, std::string& sink) {
        if (fd < 0) {
            return;
        }
        for (;;) {
            pollfd pfd{fd, POLLIN, 0};
            if (::poll(&pfd, 1, 0) <= 0) {
                return;
            }
            char buf[4096];
            const ssize_t n = ::read(fd, buf, sizeof buf);
            if (n <= 0) {
                return;
            }
            sink.append(buf, static_cast<std::size_t>(n));
        }
    }

    pid_t pid_ = -1;
    int out_fd_ = -1;
    int err_fd_ = -1;
    std::string stdout_;
    std::string stderr_;
};

}  // namespace support
