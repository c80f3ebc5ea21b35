#include "ompconf/process.hpp"

#include <cerrno>
#include <cstring>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace ompconf {
namespace {

using Clock = std::chrono::steady_clock;

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    Fd(Fd&& other) noexcept : fd_(other.release()) {}
    Fd& operator=(Fd&& other) noexcept {
        reset(other.release());
        return *this;
    }
    ~Fd() { reset(); }

    int get() const { return fd_; }
    int release() {
        int fd = fd_;
        fd_ = -1;
        return fd;
    }
    void reset(int fd = -1) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = fd;
    }

private:
    int fd_ = -1;
};

bool make_pipe(Fd& read_end, Fd& write_end) {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) return false;
    read_end.reset(fds[0]);
    write_end.reset(fds[1]);
    return true;
}

std::vector<std::string> merged_environment(const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> merged;
    for (char** entry = environ; entry && *entry; ++entry) {
        std::string_view kv(*entry);
        auto eq = kv.find('=');
        if (eq == std::string_view::npos) continue;
        merged.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
    }
    for (const auto& [key, value] : overrides) merged[key] = value;

    std::vector<std::string> out;
    out.reserve(merged.size());
    for (const auto& [key, value] : merged) out.push_back(key + "=" + value);
    return out;
}

std::vector<char*> c_strings(std::vector<std::string>& strings) {
    std::vector<char*> out;
    out.reserve(strings.size() + 1);
    for (auto& s : strings) out.push_back(s.data());
    out.push_back(nullptr);
    return out;
}

void append_capped(ProcessResult& result, const char* data, std::size_t n, std::size_t cap) {
    if (result.output.size() >= cap) {
        if (n > 0) result.truncated = true;
        return;
    }
    const std::size_t room = cap - result.output.size();
    if (n > room) {
        result.truncated = true;
        n = room;
    }
    result.output.append(data, n);
}

void kill_group(pid_t pid) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
}

void record_status(ProcessResult& result, int status) {
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.term_signal = WTERMSIG(status);
    }
}

}  // namespace

ProcessResult run_process(const ProcessSpec& spec) {
    ProcessResult result;
    result.started_at = std::chrono::system_clock::now();
    const auto start = Clock::now();

    auto fail_spawn = [&](const std::string& why) {
        result.spawn_failed = true;
        result.output = why;
        result.ended_at = std::chrono::system_clock::now();
        return result;
    };

    if (spec.argv.empty() || spec.argv.front().empty()) return fail_spawn("no command given\n");

    auto argv_storage = spec.argv;
    auto env_storage = merged_environment(spec.env);
    auto argv = c_strings(argv_storage);
    auto envp = c_strings(env_storage);
    const std::string cwd = spec.cwd ? spec.cwd->string() : std::string();

    Fd out_read, out_write, err_read, err_write;
    if (!make_pipe(out_read, out_write) || !make_pipe(err_read, err_write)) {
        return fail_spawn(std::string("pipe: ") + std::strerror(errno) + "\n");
    }

    const pid_t pid = ::fork();
    if (pid < 0) return fail_spawn(std::string("fork: ") + std::strerror(errno) + "\n");

    if (pid == 0) {
        // Async-signal-safe calls only until exec.
        ::setpgid(0, 0);
        int code = 0;
        if (!cwd.empty() && ::chdir(cwd.c_str()) != 0) {
            code = errno;
        } else if (::dup2(out_write.get(), STDOUT_FILENO) < 0 ||
                   ::dup2(out_write.get(), STDERR_FILENO) < 0) {
            code = errno;
        } else {
            ::execvpe(argv[0], argv.data(), envp.data());
            code = errno;
        }
        [[maybe_unused]] auto n = ::write(err_write.get(), &code, sizeof code);
        ::_exit(127);
    }

    ::setpgid(pid, pid);
    out_write.reset();
    err_write.reset();

    int exec_errno = 0;
    ssize_t got;
    do {
        got = ::read(err_read.get(), &exec_errno, sizeof exec_errno);
    } while (got < 0 && errno == EINTR);
    if (got == static_cast<ssize_t>(sizeof exec_errno)) {
        int status = 0;
        ::waitpid(pid, &status, 0);
        return fail_spawn("failed to execute '" + spec.argv.front() + "': " +
                          std::strerror(exec_errno) + "\n");
    }

    std::optional<Clock::time_point> deadline;
    if (spec.timeout) deadline = start + *spec.timeout;

    auto remaining_ms = [&]() -> int {
        if (!deadline) return -1;
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - Clock::now());
        return left.count() < 0 ? 0 : static_cast<int>(left.count());
    };

    char buffer[65536];
    bool eof = false;
    while (!eof) {
        pollfd pfd{out_read.get(), POLLIN, 0};
        const int wait_ms = remaining_ms();
        if (deadline && wait_ms == 0) {
            result.timed_out = true;
            break;
        }
        int ready = ::poll(&pfd, 1, wait_ms);
        if (ready < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (ready == 0) continue;
        ssize_t n = ::read(out_read.get(), buffer, sizeof buffer);
        if (n < 0) {
            if (errno == EINTR || errno == EAGAIN) continue;
            eof = true;
        } else if (n == 0) {
            eof = true;
        } else {
            append_capped(result, buffer, static_cast<std::size_t>(n), spec.output_cap);
        }
    }

    int status = 0;
    if (result.timed_out) {
        kill_group(pid);
        ::waitpid(pid, &status, 0);
    } else {
        // Output closed; the process may still be running.
        while (true) {
            pid_t r = ::waitpid(pid, &status, WNOHANG);
            if (r == pid) {
                record_status(result, status);
                break;
            }
            if (r < 0 && errno != EINTR) break;
            if (deadline && remaining_ms() == 0) {
                result.timed_out = true;
                kill_group(pid);
                ::waitpid(pid, &status, 0);
                break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
        }
    }

    if (result.truncated) result.output.append(kTruncationMarker);
    result.ended_at = std::chrono::system_clock::now();
    return result;
}

}  // namespace ompconf
