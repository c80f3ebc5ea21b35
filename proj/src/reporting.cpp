#include "ompconf/reporting.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ompconf {
namespace {

struct Tally {
    std::size_t total = 0;
    std::size_t pass = 0;
    std::size_t compile_fail = 0;
    std::size_t runtime_fail = 0;
};

std::string file_name(const std::string& id) {
    auto slash = id.find_last_of('/');
    return slash == std::string::npos ? id : id.substr(slash + 1);
}

std::string_view cell(StagedStatus s) {
    switch (s) {
        case StagedStatus::PASS: return "Pass";
        case StagedStatus::COMPILE_FAIL:
        case StagedStatus::RUNTIME_FAIL: return "Fail";
        case StagedStatus::ABSENT: return "-";
    }
    return "?";
}

void table_header(std::string& out, const ResultMatrix& matrix) {
    out += "| Test Name | OMP Ver |";
    for (const auto& v : matrix.versions) out += " " + v.profile_id + " |";
    out += "\n|---|---|";
    for (std::size_t i = 0; i < matrix.versions.size(); ++i) out += "---|";
    out += "\n";
}

void table_row(std::string& out, const ResultMatrix& matrix, const std::string& id, OmpVersion omp) {
    out += "| " + file_name(id) + " | " + std::string(to_string(omp)) + " |";
    const auto row = matrix.test_index(id);
    for (std::size_t v = 0; v < matrix.versions.size(); ++v) {
        out += " " + std::string(cell(row ? matrix.at(*row, v) : StagedStatus::ABSENT)) + " |";
    }
    out += "\n";
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace

std::string report_summary(const std::vector<ResultSet>& sets) {
    std::string out = "ompconf conformance summary\n";
    out += "profile              omp  language  results\n";

    struct Block {
        std::set<std::string> systems;
        std::map<std::pair<OmpVersion, LanguageGroup>, Tally> rows;
    };
    std::map<std::string, Block> blocks;
    for (const auto& set : sets) {
        auto& block = blocks[set.profile_id];
        block.systems.insert(set.system);
        for (const auto& r : set.records) {
            auto lang = language_from_path(r.test_path).value_or(Language::C);
            auto& t = block.rows[{r.omp_version, group_of(lang)}];
            ++t.total;
            switch (staged_status(r)) {
                case StagedStatus::PASS: ++t.pass; break;
                case StagedStatus::COMPILE_FAIL: ++t.compile_fail; break;
                case StagedStatus::RUNTIME_FAIL: ++t.runtime_fail; break;
                case StagedStatus::ABSENT: break;
            }
        }
    }

    for (const auto& [profile, block] : blocks) {
        out += "\n[" + profile + "] system=";
        bool first = true;
        for (const auto& s : block.systems) {
            out += (first ? "" : ",") + s;
            first = false;
        }
        out += "\n";
        for (const auto& [key, t] : block.rows) {
            char line[512];
            std::snprintf(line, sizeof line,
                          "%-20s %-4s %-9s total=%zu pass=%zu (%s%%) compile_fail=%zu runtime_fail=%zu "
                          "compile_pass=%zu\n",
                          profile.c_str(), std::string(to_string(key.first)).c_str(),
                          std::string(to_string(key.second)).c_str(), t.total, t.pass,
                          Percent::of(t.pass, t.total).str().c_str(), t.compile_fail, t.runtime_fail,
                          t.total - t.compile_fail);
            out += line;
        }
    }
    return out;
}

std::string report_json(const std::vector<ResultSet>& sets) {
    std::vector<ResultRecord> all;
    for (const auto& s : sets) all.insert(all.end(), s.records.begin(), s.records.end());
    return serialize(all);
}

std::string report_regressions(const ResultMatrix& matrix, const RegressionReport& report) {
    std::string out;
    if (report.regressions.empty()) {
        out += "No regressions detected.\n";
    } else {
        table_header(out, matrix);
        for (const auto& e : report.regressions) table_row(out, matrix, e.test_id, e.omp_version);
    }
    if (!report.flakes.empty()) {
        out += "\n### Inconsistent (recovered)\n\n";
        table_header(out, matrix);
        for (const auto& f : report.flakes) table_row(out, matrix, f.test_id, f.omp_version);
    }
    return out;
}

std::string report_series(std::vector<SeriesRow> series) {
    std::stable_sort(series.begin(), series.end(),
                     [](const auto& a, const auto& b) { return a.version_key < b.version_key; });
    std::string out = "version,pass,compile_fail,runtime_fail\n";
    for (const auto& row : series) {
        out += csv_field(row.version) + "," + std::to_string(row.pass) + "," + std::to_string(row.compile_fail) +
               "," + std::to_string(row.runtime_fail) + "\n";
    }
    return out;
}

std::vector<SeriesRow> parse_series(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "version,pass,compile_fail,runtime_fail") {
        throw std::invalid_argument("series CSV: missing header");
    }
    std::vector<SeriesRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != 4) throw std::invalid_argument("series CSV: expected 4 fields in '" + line + "'");
        SeriesRow row;
        row.version = fields[0];
        row.version_key = VersionKey::find_any(fields[0]).value_or(VersionKey{});
        row.pass = std::stoul(fields[1]);
        row.compile_fail = std::stoul(fields[2]);
        row.runtime_fail = std::stoul(fields[3]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string report_coverage(const std::vector<CoverageStat>& stats) {
    std::string out = "spec  language  covered  total  coverage\n";
    for (const auto& s : stats) {
        char line[128];
        std::snprintf(line, sizeof line, "%-5s %-9s %7zu %6zu  %d%%\n", std::string(to_string(s.spec_version)).c_str(),
                      std::string(to_string(s.language_group)).c_str(), s.covered, s.total, s.pct);
        out += line;
    }
    return out;
}

std::string report_intersection(const IntersectionStat& stat) {
    std::string compilers;
    for (const auto& c : stat.compilers) compilers += (compilers.empty() ? "" : ",") + c;
    char line[512];
    std::snprintf(line, sizeof line,
                  "OpenMP %s %s across [%s]: total=%zu excluded=%zu all_pass=%zu (%s%%) all_fail=%zu (%s%%) "
                  "[compile=%zu runtime=%zu mixed=%zu]%s\n",
                  std::string(to_string(stat.omp_version)).c_str(),
                  std::string(to_string(stat.language_group)).c_str(), compilers.c_str(), stat.total, stat.excluded,
                  stat.all_pass, stat.all_pass_pct.str().c_str(), stat.all_fail, stat.all_fail_pct.str().c_str(),
                  stat.all_fail_compile, stat.all_fail_runtime, stat.all_fail_mixed,
                  stat.empty_universe ? " (empty universe)" : "");
    return line;
}

}  // namespace ompconf
