// Analyses over result sets: per-version regression detection, cross-compiler
// intersection statistics, maturity series and feature coverage.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ompconf/result_model.hpp"
#include "ompconf/types.hpp"

namespace ompconf {

struct Manifest;

enum class StagedStatus { PASS, COMPILE_FAIL, RUNTIME_FAIL, ABSENT };

std::string_view to_string(StagedStatus s);
StagedStatus staged_status(const ResultRecord& r);

// A percentage held as integer hundredths, rounded half-up, so that
// reformatting never drifts from the counts it was computed from.
struct Percent {
    std::int64_t hundredths = 0;

    static Percent of(std::size_t count, std::size_t total);
    double value() const { return static_cast<double>(hundredths) / 100.0; }
    std::string str() const;  // "85.93"
    auto operator<=>(const Percent&) const = default;
};

struct VersionColumn {
    std::string profile_id;
    VersionKey version_key;
};

struct ResultMatrix {
    std::vector<std::string> tests;      // ascending test ids
    std::vector<VersionColumn> versions;  // strictly ascending version keys
    std::vector<std::vector<StagedStatus>> cells;  // [test][version]
    std::map<std::string, OmpVersion> omp_versions;
    std::vector<std::string> diagnostics;

    StagedStatus at(std::size_t test, std::size_t version) const { return cells[test][version]; }
    std::optional<std::size_t> test_index(std::string_view id) const;
};

// Columns are formed per profile_id (a profile may contribute several sets,
// e.g. one per OpenMP version). Unversioned columns are dropped with a
// diagnostic when more than one column exists.
// Throws AnalysisError (MixedFamilies, DuplicateVersion, DuplicateRecord).
ResultMatrix build_matrix(const std::vector<ResultSet>& sets);

enum class Transition { AlwaysPass, NeverPass, Regression, Flake, Improvement };

std::string_view to_string(Transition t);

// ABSENT entries are ignored. With p = PASS and f = any failure, a sequence
// containing p..f..p is a Flake; otherwise it has the shape f* p* f*, which
// is NeverPass (no p), AlwaysPass (only p), Regression (ends in f after a p)
// or Improvement (starts with f, ends in p).
Transition classify(std::span<const StagedStatus> statuses);

struct RegressionEntry {
    std::string test_id;
    OmpVersion omp_version;
    std::string last_pass_version;
    std::string first_fail_version;
    std::size_t last_pass_index = 0;
    std::size_t first_fail_index = 0;
    std::vector<StagedStatus> trailing_statuses;  // from first_fail to the last column
};

struct FlakeEntry {
    std::string test_id;
    OmpVersion omp_version;
    std::vector<StagedStatus> statuses;
};

struct RegressionReport {
    std::vector<RegressionEntry> regressions;
    std::vector<FlakeEntry> flakes;
    std::vector<std::string> improvements;
    std::vector<std::string> always_pass;
    std::vector<std::string> never_pass;
};

// Throws AnalysisError(TooFewVersions) for fewer than two columns.
RegressionReport detect_regressions(const ResultMatrix& matrix);

struct IntersectionStat {
    OmpVersion omp_version;
    LanguageGroup language_group;
    std::vector<std::string> compilers;
    std::size_t total = 0;     // tests present under every compiler
    std::size_t excluded = 0;  // tests missing under at least one compiler
    std::size_t all_pass = 0;
    std::size_t all_fail = 0;
    // Breakdown of all_fail by stage.
    std::size_t all_fail_compile = 0;
    std::size_t all_fail_runtime = 0;
    std::size_t all_fail_mixed = 0;
    Percent all_pass_pct;
    Percent all_fail_pct;
    bool empty_universe = false;
};

// `per_compiler` maps a profile id to a single-column matrix. Throws
// std::invalid_argument for an empty map or a multi-column matrix.
IntersectionStat intersection_stats(const std::map<std::string, ResultMatrix>& per_compiler,
                                    OmpVersion omp_version, LanguageGroup group);

struct SeriesRow {
    std::string version;
    VersionKey version_key;
    std::size_t pass = 0;
    std::size_t compile_fail = 0;
    std::size_t runtime_fail = 0;

    bool operator==(const SeriesRow&) const = default;
};

std::vector<SeriesRow> maturity_series(const ResultMatrix& matrix);

struct FeatureEntry {
    std::string key;
    OmpVersion spec_version;
    std::set<Language> languages;
};

struct CoverageStat {
    OmpVersion spec_version;
    LanguageGroup language_group;
    std::size_t covered = 0;
    std::size_t total = 0;
    int pct = 0;  // integer percent, half-up

    bool operator==(const CoverageStat&) const = default;
};

// Catalog file: {"features": [{"key": "...", "spec_version": "5.0",
//                              "languages": ["C", "CXX", "FORTRAN"]}]}
// Throws ConfigError for malformed files.
std::vector<FeatureEntry> parse_catalog(std::string_view text);
std::vector<FeatureEntry> load_catalog(const std::filesystem::path& path);

// One stat per (spec version, language group) with at least one feature.
// Throws AnalysisError(DuplicateFeatureKey).
std::vector<CoverageStat> coverage(const std::vector<FeatureEntry>& catalog, const Manifest& manifest);

}  // namespace ompconf
