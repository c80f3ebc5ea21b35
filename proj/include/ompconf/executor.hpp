// Compile and run phases for (test, toolchain) pairs, and batch execution.
#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ompconf/process.hpp"
#include "ompconf/result_model.hpp"
#include "ompconf/timestamp.hpp"
#include "ompconf/types.hpp"

namespace ompconf {

struct Manifest;
struct TestCase;
struct ToolchainProfile;

struct RunConfig {
    OmpVersion omp_version = OmpVersion::V4_5;
    DeviceType device_type = DeviceType::none;
    std::string system = "unknown";
    std::chrono::milliseconds compile_timeout{120'000};
    std::chrono::milliseconds run_timeout{60'000};
    int parallelism = 1;
    bool log = false;       // keep logs of failing tests
    bool log_all = false;   // keep logs of every test
    bool verbose = false;
    bool verbose_tests = false;
    ZoneSpec zone;
    std::size_t output_cap = kDefaultOutputCap;
    // Compilers and test binaries run with this working directory so that
    // relative flags such as -I./ompvv resolve. Empty: absolute source paths
    // are passed instead.
    std::filesystem::path corpus_root;

    // Throws std::invalid_argument on non-positive timeouts or parallelism.
    void validate() const;
};

struct PhaseOutcome {
    Status status = Status::FAIL;
    std::optional<int> exit_code;
    std::chrono::system_clock::time_point started_at;
    std::chrono::system_clock::time_point ended_at;
    std::string captured_output;
    bool timed_out = false;
    bool spawn_failed = false;
    bool truncated = false;
};

struct CompileOutcome {
    PhaseOutcome phase;
    std::filesystem::path binary;  // on-disk location, `<workdir>/bin/<...>/<name>.run`
    std::string command_display;
    std::optional<std::string> template_error;
};

// `<workdir>/bin/<id without "tests/">.run`: unique per test id.
std::filesystem::path binary_location(const TestCase& test, const std::filesystem::path& workdir);

CompileOutcome compile(const TestCase& test, const ToolchainProfile& profile, const RunConfig& cfg,
                       const std::filesystem::path& workdir);

PhaseOutcome run(const std::filesystem::path& binary, const ToolchainProfile& profile, const RunConfig& cfg);

// Never throws for test-level failures; everything is encoded in the record.
ResultRecord execute_one(const TestCase& test, const ToolchainProfile& profile, const RunConfig& cfg,
                         const std::filesystem::path& workdir);

// Called once per finished test, serialised across workers.
using BatchObserver = std::function<void(std::size_t index, const TestCase&, const ResultRecord&)>;

// One record per manifest test, in manifest order.
std::vector<ResultRecord> execute_batch(const Manifest& manifest, const ToolchainProfile& profile,
                                        const RunConfig& cfg, const std::filesystem::path& workdir,
                                        const BatchObserver& observer = {});

}  // namespace ompconf
