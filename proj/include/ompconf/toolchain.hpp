// Compiler toolchain profiles: per-language commands, flag templates keyed by
// (language, OpenMP version, device type), environment, and probed identity.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ompconf/types.hpp"

namespace ompconf {

struct TestCase;
struct RunConfig;

// A template row key; nullopt components are wildcards ("*" in the config file).
struct TemplateKey {
    std::optional<Language> language;
    std::optional<OmpVersion> omp_version;
    std::optional<DeviceType> device_type;

    auto operator<=>(const TemplateKey&) const = default;
};

struct ToolchainProfile {
    std::string profile_id;
    std::string family;
    std::map<Language, std::string> commands;
    std::string version_flag = "--version";
    std::string version_text;  // "<command> <first banner line>"
    VersionKey version_key;    // empty: excluded from version-ordered analyses
    // "Compiler name" per language, filled by probe_version.
    std::map<Language, std::string> compiler_names;
    std::map<TemplateKey, std::vector<std::string>> flag_template;
    std::map<std::string, std::string> env;
    std::vector<std::string> diagnostics;

    const std::string& command_for(Language lang) const;
    std::string compiler_name_for(Language lang) const;

    // Most specific row first: exact, then (lang, ver, *), (lang, *, dev),
    // (lang, *, *), and finally (*, *, *). nullptr when nothing matches.
    const std::vector<std::string>* find_template(Language lang, OmpVersion version,
                                                  DeviceType device) const;
};

struct RenderedInvocation {
    std::vector<std::string> argv;
    std::string display;  // space-joined argv
};

// Config file format (JSON):
//   {"profiles": [{"id": "gcc-11.2.0", "family": "gcc",
//                  "commands": {"C": "gcc", "CXX": "g++", "FORTRAN": "gfortran"},
//                  "version_flag": "--version",
//                  "env": {"OMP_TARGET_OFFLOAD": "MANDATORY"},
//                  "templates": [{"language": "C", "omp_version": "*", "device_type": "*",
//                                 "flags": ["-fopenmp"]}]}]}
// Unknown keys anywhere are rejected. Throws ConfigError.
std::vector<ToolchainProfile> load_profiles(const std::filesystem::path& config_path);
std::vector<ToolchainProfile> parse_profiles(std::string_view config_text);

// Runs `<command> <version_flag>` for every configured language and records
// the banners. Throws ProbeFailed when no command could be probed; partial
// failures are left in `diagnostics`.
ToolchainProfile probe_version(const ToolchainProfile& profile);

// argv = [command] ++ template flags ++ [source, "-o", binary]. The source is
// the test id, resolved against the corpus root the compiler runs in.
// Throws NoTemplate.
RenderedInvocation render(const ToolchainProfile& profile, const TestCase& test, const RunConfig& cfg,
                          const std::filesystem::path& binary);

std::string join_display(const std::vector<std::string>& argv);

// Orders profiles by version key; unversioned profiles are dropped with a
// diagnostic appended to `dropped`.
std::vector<ToolchainProfile> order_by_version(std::vector<ToolchainProfile> profiles,
                                               std::vector<std::string>* dropped = nullptr);

}  // namespace ompconf
