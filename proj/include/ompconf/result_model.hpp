// The per-(test, toolchain) result record and its JSON interchange format.
//
// On the wire a result file is a JSON array of objects with exactly 18 keys,
// sorted ascending, two-space indented, control bytes escaped as \u00XX and a
// trailing newline. Consumers (the analysis commands, external dashboards)
// depend on this byte layout.
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ompconf/timestamp.hpp"
#include "ompconf/types.hpp"

namespace ompconf {

struct ResultRecord {
    std::string binary_path;
    std::string compiler_command;
    Timestamp compiler_start;
    Timestamp compiler_end;
    std::string compiler_name;
    std::string compiler_output;
    Status compiler_result = Status::FAIL;
    OmpVersion omp_version = OmpVersion::V4_5;
    Timestamp runtime_start;
    Timestamp runtime_end;
    bool runtime_only = false;
    std::string runtime_output;
    Status runtime_result = Status::FAIL;
    std::string test_comments = "none";
    std::string git_commit = "unknown";
    std::string test_name;
    std::string test_path;
    std::string test_system;

    bool operator==(const ResultRecord&) const = default;
};

namespace keys {
inline constexpr std::string_view kBinaryPath = "Binary path";
inline constexpr std::string_view kCompilerCommand = "Compiler command";
inline constexpr std::string_view kCompilerEnd = "Compiler ending date";
inline constexpr std::string_view kCompilerName = "Compiler name";
inline constexpr std::string_view kCompilerOutput = "Compiler output";
inline constexpr std::string_view kCompilerResult = "Compiler result";
inline constexpr std::string_view kCompilerStart = "Compiler starting date";
inline constexpr std::string_view kOmpVersion = "OMP version";
inline constexpr std::string_view kRuntimeEnd = "Runtime ending date";
inline constexpr std::string_view kRuntimeOnly = "Runtime only";
inline constexpr std::string_view kRuntimeOutput = "Runtime output";
inline constexpr std::string_view kRuntimeResult = "Runtime result";
inline constexpr std::string_view kRuntimeStart = "Runtime starting date";
inline constexpr std::string_view kTestComments = "Test comments";
inline constexpr std::string_view kGitCommit = "Test gitCommit";
inline constexpr std::string_view kTestName = "Test name";
inline constexpr std::string_view kTestPath = "Test path";
inline constexpr std::string_view kTestSystem = "Test system";

// Wire order (ascending byte order).
inline constexpr std::array<std::string_view, 18> kAll{
    kBinaryPath,   kCompilerCommand, kCompilerEnd,   kCompilerName,  kCompilerOutput, kCompilerResult,
    kCompilerStart, kOmpVersion,     kRuntimeEnd,    kRuntimeOnly,   kRuntimeOutput,  kRuntimeResult,
    kRuntimeStart, kTestComments,    kGitCommit,     kTestName,      kTestPath,       kTestSystem};
}  // namespace keys

// Records from one make-style invocation: one profile, one system, one OpenMP version.
struct ResultSet {
    std::string profile_id;
    std::string family;  // empty when unknown
    VersionKey version_key;
    std::string system;
    OmpVersion omp_version = OmpVersion::V4_5;
    std::vector<ResultRecord> records;

    // Throws std::invalid_argument when a record disagrees with system/omp_version.
    void validate() const;
};

std::string serialize(const std::vector<ResultRecord>& records);

// Throws ResultParseError (JsonSyntax, SchemaViolation, BadEnumValue, MalformedTimestamp).
std::vector<ResultRecord> parse(std::string_view input);

// Splits records into ResultSets, one per (system, OMP version), ordered by both.
std::vector<ResultSet> group_into_sets(const std::vector<ResultRecord>& records,
                                       const std::string& profile_id, const std::string& family,
                                       const VersionKey& version_key);

}  // namespace ompconf
