// Child-process execution with a deadline and merged output capture.
#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ompconf {

inline constexpr std::size_t kDefaultOutputCap = std::size_t{1} << 20;

struct ProcessSpec {
    std::vector<std::string> argv;
    // Applied on top of the parent environment.
    std::map<std::string, std::string> env;
    std::optional<std::filesystem::path> cwd;
    // Absent means wait forever.
    std::optional<std::chrono::milliseconds> timeout;
    std::size_t output_cap = kDefaultOutputCap;
};

struct ProcessResult {
    std::chrono::system_clock::time_point started_at;
    std::chrono::system_clock::time_point ended_at;
    // Absent when the process timed out, was killed by a signal, or never started.
    std::optional<int> exit_code;
    std::optional<int> term_signal;
    bool timed_out = false;
    bool spawn_failed = false;
    // stdout and stderr interleaved in arrival order.
    std::string output;
    bool truncated = false;

    bool succeeded() const { return exit_code == 0 && !timed_out; }
};

// Never throws for child-side failures; a missing executable yields
// spawn_failed with an explanation in `output`.
ProcessResult run_process(const ProcessSpec& spec);

inline constexpr std::string_view kTruncationMarker = "\n[ompconf: output truncated]\n";

}  // namespace ompconf
