#include "ompconf/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ompconf/corpus_manifest.hpp"
#include "ompconf/errors.hpp"

namespace ompconf {

std::string_view to_string(StagedStatus s) {
    switch (s) {
        case StagedStatus::PASS: return "PASS";
        case StagedStatus::COMPILE_FAIL: return "COMPILE_FAIL";
        case StagedStatus::RUNTIME_FAIL: return "RUNTIME_FAIL";
        case StagedStatus::ABSENT: return "ABSENT";
    }
    return "?";
}

StagedStatus staged_status(const ResultRecord& r) {
    if (r.compiler_result == Status::FAIL) return StagedStatus::COMPILE_FAIL;
    return r.runtime_result == Status::PASS ? StagedStatus::PASS : StagedStatus::RUNTIME_FAIL;
}

Percent Percent::of(std::size_t count, std::size_t total) {
    if (total == 0) return {};
    // round(10000 * count / total) with halves rounded up, in integers.
    const auto num = 20000ULL * count + total;
    return Percent{static_cast<std::int64_t>(num / (2ULL * total))};
}

std::string Percent::str() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(hundredths / 100),
                  static_cast<long long>(hundredths % 100));
    return buf;
}

std::optional<std::size_t> ResultMatrix::test_index(std::string_view id) const {
    auto it = std::lower_bound(tests.begin(), tests.end(), id);
    if (it == tests.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - tests.begin());
}

ResultMatrix build_matrix(const std::vector<ResultSet>& sets) {
    ResultMatrix m;

    std::string family;
    for (const auto& s : sets) {
        if (s.family.empty()) continue;
        if (family.empty()) family = s.family;
        if (s.family != family) {
            throw AnalysisError(AnalysisError::Kind::MixedFamilies,
                                "result sets mix compiler families '" + family + "' and '" + s.family + "'");
        }
    }

    // Column per profile id.
    std::map<std::string, VersionKey> columns;
    for (const auto& s : sets) {
        auto [it, inserted] = columns.emplace(s.profile_id, s.version_key);
        if (!inserted && it->second != s.version_key) {
            throw AnalysisError(AnalysisError::Kind::DuplicateVersion,
                                "profile '" + s.profile_id + "' appears with versions " + it->second.str() +
                                    " and " + s.version_key.str());
        }
    }
    for (const auto& [id, key] : columns) {
        if (columns.size() > 1 && key.empty()) {
            m.diagnostics.push_back("profile '" + id + "' has no parsable version; excluded from ordering");
            continue;
        }
        m.versions.push_back({id, key});
    }
    std::stable_sort(m.versions.begin(), m.versions.end(),
                     [](const auto& a, const auto& b) { return a.version_key < b.version_key; });
    for (std::size_t i = 1; i < m.versions.size(); ++i) {
        if (m.versions[i].version_key == m.versions[i - 1].version_key) {
            throw AnalysisError(AnalysisError::Kind::DuplicateVersion,
                                "profiles '" + m.versions[i - 1].profile_id + "' and '" + m.versions[i].profile_id +
                                    "' share version " + m.versions[i].version_key.str());
        }
    }

    std::map<std::string, std::size_t> column_of;
    for (std::size_t i = 0; i < m.versions.size(); ++i) column_of[m.versions[i].profile_id] = i;

    std::set<std::string> ids;
    for (const auto& s : sets) {
        if (!column_of.count(s.profile_id)) continue;
        for (const auto& r : s.records) {
            ids.insert(r.test_path);
            m.omp_versions.emplace(r.test_path, r.omp_version);
        }
    }
    m.tests.assign(ids.begin(), ids.end());
    m.cells.assign(m.tests.size(), std::vector<StagedStatus>(m.versions.size(), StagedStatus::ABSENT));

    std::vector<std::vector<bool>> filled(m.tests.size(), std::vector<bool>(m.versions.size(), false));
    for (const auto& s : sets) {
        auto col = column_of.find(s.profile_id);
        if (col == column_of.end()) continue;
        for (const auto& r : s.records) {
            const auto row = *m.test_index(r.test_path);
            if (filled[row][col->second]) {
                throw AnalysisError(AnalysisError::Kind::DuplicateRecord,
                                    "test '" + r.test_path + "' recorded twice for profile '" + s.profile_id + "'");
            }
            filled[row][col->second] = true;
            m.cells[row][col->second] = staged_status(r);
        }
    }
    return m;
}

std::string_view to_string(Transition t) {
    switch (t) {
        case Transition::AlwaysPass: return "always-pass";
        case Transition::NeverPass: return "never-pass";
        case Transition::Regression: return "regression";
        case Transition::Flake: return "flake";
        case Transition::Improvement: return "improvement";
    }
    return "?";
}

Transition classify(std::span<const StagedStatus> statuses) {
    bool seen_pass = false;
    bool failed_after_pass = false;
    bool any_fail = false;
    bool any_pass = false;
    StagedStatus last = StagedStatus::ABSENT;
    for (auto s : statuses) {
        if (s == StagedStatus::ABSENT) continue;
        if (s == StagedStatus::PASS) {
            if (failed_after_pass) return Transition::Flake;
            seen_pass = any_pass = true;
        } else {
            any_fail = true;
            if (seen_pass) failed_after_pass = true;
        }
        last = s;
    }
    if (!any_pass) return Transition::NeverPass;
    if (!any_fail) return Transition::AlwaysPass;
    return last == StagedStatus::PASS ? Transition::Improvement : Transition::Regression;
}

RegressionReport detect_regressions(const ResultMatrix& matrix) {
    if (matrix.versions.size() < 2) {
        throw AnalysisError(AnalysisError::Kind::TooFewVersions,
                            "regression detection needs at least two versions, got " +
                                std::to_string(matrix.versions.size()));
    }
    RegressionReport report;
    for (std::size_t t = 0; t < matrix.tests.size(); ++t) {
        const auto& row = matrix.cells[t];
        const auto& id = matrix.tests[t];
        const auto omp = matrix.omp_versions.at(id);
        switch (classify(row)) {
            case Transition::AlwaysPass: report.always_pass.push_back(id); break;
            case Transition::NeverPass: report.never_pass.push_back(id); break;
            case Transition::Improvement: report.improvements.push_back(id); break;
            case Transition::Flake: report.flakes.push_back({id, omp, row}); break;
            case Transition::Regression: {
                std::size_t last_pass = 0;
                for (std::size_t v = 0; v < row.size(); ++v) {
                    if (row[v] == StagedStatus::PASS) last_pass = v;
                }
                std::size_t first_fail = last_pass + 1;
                while (row[first_fail] == StagedStatus::ABSENT) ++first_fail;
                RegressionEntry e;
                e.test_id = id;
                e.omp_version = omp;
                e.last_pass_index = last_pass;
                e.first_fail_index = first_fail;
                e.last_pass_version = matrix.versions[last_pass].profile_id;
                e.first_fail_version = matrix.versions[first_fail].profile_id;
                e.trailing_statuses.assign(row.begin() + static_cast<std::ptrdiff_t>(first_fail), row.end());
                report.regressions.push_back(std::move(e));
                break;
            }
        }
    }
    return report;
}

IntersectionStat intersection_stats(const std::map<std::string, ResultMatrix>& per_compiler,
                                    OmpVersion omp_version, LanguageGroup group) {
    if (per_compiler.empty()) throw std::invalid_argument("intersection needs at least one compiler");
    IntersectionStat stat;
    stat.omp_version = omp_version;
    stat.language_group = group;

    auto in_scope = [&](const ResultMatrix& m, const std::string& id) {
        auto lang = language_from_path(id);
        auto omp = m.omp_versions.find(id);
        return lang && group_of(*lang) == group && omp != m.omp_versions.end() && omp->second == omp_version;
    };

    std::set<std::string> universe;
    for (const auto& [profile, m] : per_compiler) {
        if (m.versions.size() != 1) {
            throw std::invalid_argument("matrix for '" + profile + "' must have exactly one version column");
        }
        stat.compilers.push_back(profile);
        for (const auto& id : m.tests) {
            if (in_scope(m, id)) universe.insert(id);
        }
    }

    for (const auto& id : universe) {
        std::vector<StagedStatus> statuses;
        for (const auto& [profile, m] : per_compiler) {
            auto row = m.test_index(id);
            statuses.push_back(row && in_scope(m, id) ? m.at(*row, 0) : StagedStatus::ABSENT);
        }
        if (std::count(statuses.begin(), statuses.end(), StagedStatus::ABSENT) > 0) {
            ++stat.excluded;
            continue;
        }
        ++stat.total;
        const auto passes = std::count(statuses.begin(), statuses.end(), StagedStatus::PASS);
        if (passes == static_cast<std::ptrdiff_t>(statuses.size())) {
            ++stat.all_pass;
        } else if (passes == 0) {
            ++stat.all_fail;
            const auto compile = std::count(statuses.begin(), statuses.end(), StagedStatus::COMPILE_FAIL);
            if (compile == static_cast<std::ptrdiff_t>(statuses.size())) {
                ++stat.all_fail_compile;
            } else if (compile == 0) {
                ++stat.all_fail_runtime;
            } else {
                ++stat.all_fail_mixed;
            }
        }
    }

    stat.empty_universe = stat.total == 0;
    stat.all_pass_pct = Percent::of(stat.all_pass, stat.total);
    stat.all_fail_pct = Percent::of(stat.all_fail, stat.total);
    return stat;
}

std::vector<SeriesRow> maturity_series(const ResultMatrix& matrix) {
    std::vector<SeriesRow> rows;
    for (std::size_t v = 0; v < matrix.versions.size(); ++v) {
        SeriesRow row{matrix.versions[v].profile_id, matrix.versions[v].version_key, 0, 0, 0};
        for (std::size_t t = 0; t < matrix.tests.size(); ++t) {
            switch (matrix.at(t, v)) {
                case StagedStatus::PASS: ++row.pass; break;
                case StagedStatus::COMPILE_FAIL: ++row.compile_fail; break;
                case StagedStatus::RUNTIME_FAIL: ++row.runtime_fail; break;
                case StagedStatus::ABSENT: break;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FeatureEntry> parse_catalog(std::string_view text) {
    using nlohmann::json;
    auto bad = [](const std::string& why) -> ConfigError {
        return ConfigError(ConfigError::Kind::ConfigSemantic, "feature catalog: " + why);
    };
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(ConfigError::Kind::ConfigSyntax, std::string("feature catalog: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("features") || !doc["features"].is_array()) {
        throw bad("expected an object with a \"features\" array");
    }
    std::vector<FeatureEntry> catalog;
    for (const auto& row : doc["features"]) {
        if (!row.is_object()) throw bad("feature rows must be objects");
        for (const auto& [key, value] : row.items()) {
            if (key != "key" && key != "spec_version" && key != "languages") throw bad("unknown key \"" + key + "\"");
        }
        if (!row.contains("key") || !row["key"].is_string()) throw bad("feature without a \"key\"");
        FeatureEntry entry;
        entry.key = row["key"].get<std::string>();
        if (!row.contains("spec_version") || !row["spec_version"].is_string()) {
            throw bad("feature '" + entry.key + "' lacks \"spec_version\"");
        }
        auto version = parse_omp_version(row["spec_version"].get<std::string>());
        if (!version) throw bad("feature '" + entry.key + "' has an unknown spec_version");
        entry.spec_version = *version;
        if (!row.contains("languages") || !row["languages"].is_array()) {
            throw bad("feature '" + entry.key + "' lacks a \"languages\" array");
        }
        for (const auto& l : row["languages"]) {
            auto lang = l.is_string() ? parse_language(l.get<std::string>()) : std::nullopt;
            if (!lang) throw bad("feature '" + entry.key + "' lists an unknown language");
            entry.languages.insert(*lang);
        }
        catalog.push_back(std::move(entry));
    }
    return catalog;
}

std::vector<FeatureEntry> load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(ConfigError::Kind::ConfigNotFound, "feature catalog '" + path.string() + "' not found");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str());
}

std::vector<CoverageStat> coverage(const std::vector<FeatureEntry>& catalog, const Manifest& manifest) {
    std::set<std::string> keys;
    for (const auto& f : catalog) {
        if (!keys.insert(f.key).second) {
            throw AnalysisError(AnalysisError::Kind::DuplicateFeatureKey, "duplicate feature key '" + f.key + "'");
        }
    }

    std::set<std::pair<std::string, LanguageGroup>> tagged;
    for (const auto& test : manifest.tests) {
        for (const auto& tag : test.feature_tags) tagged.emplace(tag, group_of(test.language));
    }

    std::map<std::pair<OmpVersion, LanguageGroup>, CoverageStat> stats;
    for (const auto& f : catalog) {
        std::set<LanguageGroup> groups;
        for (auto lang : f.languages) groups.insert(group_of(lang));
        for (auto g : groups) {
            auto& s = stats[{f.spec_version, g}];
            s.spec_version = f.spec_version;
            s.language_group = g;
            ++s.total;
            if (tagged.count({f.key, g})) ++s.covered;
        }
    }

    std::vector<CoverageStat> out;
    for (auto& [key, s] : stats) {
        s.pct = static_cast<int>((200 * s.covered + s.total) / (2 * s.total));
        out.push_back(s);
    }
    return out;
}

}  // namespace ompconf
