// Test corpus discovery. A corpus is a directory holding `tests/<version>/...`
// where <version> is one of 4.5, 5.0, 5.1, 5.2; every `.c`, `.cpp`, `.f90` or
// `.F90` file below a version directory is one test.
#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ompconf/types.hpp"

namespace ompconf {

struct TestCase {
    std::string id;        // "tests/4.5/application_kernels/alpaka_complex_template.cpp"
    std::string name;      // "alpaka_complex_template.cpp"
    Language language = Language::C;
    OmpVersion omp_version = OmpVersion::V4_5;
    std::string category;  // "application_kernels"; empty when the file sits in the version dir
    std::filesystem::path source_path;
    std::string git_commit = "unknown";
    bool runtime_only = false;
    std::vector<std::string> feature_tags;
    std::string comment = "none";

    bool operator==(const TestCase&) const = default;
};

// Identity fields derived purely from a corpus-relative id; nullopt when the
// id does not follow the `tests/<version>/.../<file>.<ext>` convention.
struct PathIdentity {
    std::string name;
    Language language;
    OmpVersion omp_version;
    std::string category;
};
std::optional<PathIdentity> identity_from_id(std::string_view id);

// Empty sets mean "everything".
struct VersionLanguageFilter {
    std::set<OmpVersion> versions;
    std::set<Language> languages;

    bool accepts(OmpVersion v, Language l) const {
        return (versions.empty() || versions.count(v)) && (languages.empty() || languages.count(l));
    }
};

struct Manifest {
    std::filesystem::path corpus_root;
    std::vector<TestCase> tests;  // ascending by id
    std::chrono::system_clock::time_point discovered_at;
    // Warning-level notes, e.g. that the filter matched nothing.
    std::vector<std::string> diagnostics;

    const TestCase* find(std::string_view id) const;
};

// Accepts either the corpus root or its `tests` directory itself.
// Throws CorpusError (MissingCorpusRoot, SymlinkCycle).
Manifest discover(const std::filesystem::path& corpus_root, const VersionLanguageFilter& filter = {});

// Magic comments recognised in test sources. Both `//!` and `!!` prefixes are
// accepted so C, C++ and Fortran sources share one syntax:
//   //! FEATURE: <key>     feature-catalog tag (repeatable)
//   //! COMMENT: <text>    populates "Test comments"
//   //! RUNTIME_ONLY       reuse a prebuilt binary instead of compiling
struct Annotations {
    std::vector<std::string> features;
    std::optional<std::string> comment;
    bool runtime_only = false;
};

// Throws CorpusError(UnreadableSource).
Annotations read_annotations(const std::filesystem::path& source_path);
std::vector<std::string> parse_annotations(const std::filesystem::path& source_path);

// Short commit hash ("98cae2b"), suffixed "-dirty" for a modified worktree,
// or "unknown" when the tree is not under git or git is unavailable.
std::string probe_git_commit(const std::filesystem::path& corpus_root);

}  // namespace ompconf
