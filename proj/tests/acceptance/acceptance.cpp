// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any check fails.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "../crusher_record.hpp"
#include "../regression_tables.hpp"
#include "../test_support.hpp"
#include "ompconf/analysis.hpp"
#include "ompconf/process.hpp"
#include "ompconf/toolchain.hpp"

using namespace ompconf;
using namespace ompconf::test;
namespace fs = std::filesystem;

namespace {

using S = StagedStatus;

struct Failure {
    std::string why;
};

void expect(bool condition, const std::string& why) {
    if (!condition) throw Failure{why};
}

ProcessResult ompconf_cli(std::vector<std::string> args) {
    ProcessSpec spec;
    spec.argv = {OMPCONF_EXE};
    spec.argv.insert(spec.argv.end(), args.begin(), args.end());
    spec.timeout = std::chrono::seconds(60);
    return run_process(spec);
}

void golden_json() {
    const auto text = serialize({crusher_record()});
    expect(text == read_file(fs::path(OMPCONF_GOLDEN) / "crusher_record.json"), "bytes differ from golden file");
    expect(text.find("\\u001b[0;32m") != std::string::npos, "escape sequence not written as \\u001b");
    expect(text.find("\"Compiler ending date\": \"Thu 14 Jul 2022 04:30:15 PM EDT\"") != std::string::npos,
           "timestamp text");
}

// Rows of a markdown regression table: test name -> cells.
std::map<std::string, std::vector<std::string>> table_rows(const std::string& md) {
    std::map<std::string, std::vector<std::string>> rows;
    std::istringstream in(md);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("| ", 0) != 0 || line.rfind("| Test Name", 0) == 0) continue;
        std::vector<std::string> cells;
        std::istringstream fields(line.substr(1));
        for (std::string f; std::getline(fields, f, '|');) {
            auto b = f.find_first_not_of(' '), e = f.find_last_not_of(' ');
            if (b != std::string::npos) cells.push_back(f.substr(b, e - b + 1));
        }
        if (!cells.empty()) rows[cells.front()] = {cells.begin() + 1, cells.end()};
    }
    return rows;
}

void regression_tables() {
    TempDir dir;
    for (const auto& h : {gcc_history(), llvm_history(), nvhpc_history()}) {
        std::vector<std::string> args{"report", "regressions"};
        std::string labels, order;
        for (std::size_t col = 0; col < 3; ++col) {
            const auto file = (dir / (h.family + std::to_string(col) + ".json")).string();
            write_file(file, serialize(history_records(h, col)));
            args.push_back(file);
            labels += (col ? "," : "") + h.labels[col];
            order += (col ? "," : "") + h.versions[col];
        }
        args.insert(args.end(), {"--labels", labels, "--order", order, "--family", h.family});
        auto r = ompconf_cli(args);
        expect(r.exit_code == 0, h.family + ": exit " + std::to_string(r.exit_code.value_or(-1)) + ": " + r.output);
        auto rows = table_rows(r.output);
        expect(rows.size() == h.expected_regressions.size(),
               h.family + ": " + std::to_string(rows.size()) + " rows, expected " +
                   std::to_string(h.expected_regressions.size()));
        for (std::size_t i = 0; i < h.expected_regressions.size(); ++i) {
            const auto& name = h.expected_regressions[i];
            expect(rows.count(name) == 1, h.family + ": missing row " + name);
            const auto& cells = rows[name];
            expect(cells.size() == 4, h.family + ": bad row shape for " + name);
            for (std::size_t col = 0; col < 3; ++col) {
                const auto want = col < h.expected_first_fail[i] ? "Pass" : "Fail";
                expect(cells[col + 1] == want, h.family + ": " + name + " column " + h.labels[col]);
            }
        }
    }
}

ResultSet set_of(const std::string& profile, const std::vector<std::pair<std::string, S>>& cells, OmpVersion v) {
    ResultSet s;
    s.profile_id = profile;
    s.omp_version = v;
    s.system = "summit";
    for (const auto& [id, st] : cells) {
        if (st == S::ABSENT) continue;
        s.records.push_back(make_record(id, st == S::COMPILE_FAIL ? Status::FAIL : Status::PASS,
                                        st == S::PASS ? Status::PASS : Status::FAIL, v));
    }
    return s;
}

void intersection_oracle() {
    std::mt19937 rng(20220714);
    const S choices[] = {S::PASS, S::COMPILE_FAIL, S::RUNTIME_FAIL, S::ABSENT};
    for (int instance = 0; instance < 200; ++instance) {
        const int compilers = 1 + static_cast<int>(rng() % 5);
        const int tests = static_cast<int>(rng() % 21);
        std::vector<std::string> ids;
        for (int t = 0; t < tests; ++t) ids.push_back("tests/5.0/t" + std::to_string(t) + (rng() % 4 ? ".c" : ".F90"));
        std::vector<std::vector<S>> table(ids.size());
        std::map<std::string, ResultMatrix> per;
        for (int c = 0; c < compilers; ++c) {
            std::vector<std::pair<std::string, S>> cells;
            for (std::size_t t = 0; t < ids.size(); ++t) {
                auto st = choices[rng() % 4];
                table[t].push_back(st);
                cells.push_back({ids[t], st});
            }
            const auto name = "c" + std::to_string(c);
            per[name] = build_matrix({set_of(name, cells, OmpVersion::V5_0)});
        }
        for (auto group : {LanguageGroup::C_CXX, LanguageGroup::FORTRAN}) {
            std::size_t total = 0, pass = 0, fail = 0;
            for (std::size_t t = 0; t < ids.size(); ++t) {
                if (ids[t].ends_with(".F90") != (group == LanguageGroup::FORTRAN)) continue;
                const auto& row = table[t];
                if (std::count(row.begin(), row.end(), S::ABSENT) > 0) continue;
                ++total;
                const auto np = std::count(row.begin(), row.end(), S::PASS);
                pass += np == compilers;
                fail += np == 0;
            }
            auto stat = intersection_stats(per, OmpVersion::V5_0, group);
            const auto tag = "instance " + std::to_string(instance);
            expect(stat.total == total, tag + ": total");
            expect(stat.all_pass == pass, tag + ": all_pass");
            expect(stat.all_fail == fail, tag + ": all_fail");
            expect(stat.all_pass_pct == Percent::of(pass, total), tag + ": all_pass_pct");
            expect(stat.all_fail_pct == Percent::of(fail, total), tag + ": all_fail_pct");
            expect(stat.all_pass_pct.hundredths + stat.all_fail_pct.hundredths <= 10000, tag + ": pct sum > 100");
        }
    }
}

void transition_classifier() {
    const S alphabet[] = {S::PASS, S::COMPILE_FAIL, S::RUNTIME_FAIL};
    for (int len = 2; len <= 4; ++len) {
        int count = 1;
        for (int i = 0; i < len; ++i) count *= 3;
        std::vector<ResultSet> sets(static_cast<std::size_t>(len));
        std::map<std::string, std::vector<S>> sequences;
        for (int v = 0; v < len; ++v) {
            sets[static_cast<std::size_t>(v)].profile_id = "v" + std::to_string(v + 1);
            sets[static_cast<std::size_t>(v)].version_key = VersionKey({v + 1});
        }
        for (int code = 0; code < count; ++code) {
            const auto id = "tests/5.0/s" + std::to_string(code) + ".c";
            for (int v = 0, c = code; v < len; ++v, c /= 3) {
                const auto st = alphabet[c % 3];
                sequences[id].push_back(st);
                sets[static_cast<std::size_t>(v)].records.push_back(
                    make_record(id, st == S::COMPILE_FAIL ? Status::FAIL : Status::PASS,
                                st == S::PASS ? Status::PASS : Status::FAIL));
            }
        }
        auto report = detect_regressions(build_matrix(sets));
        std::map<std::string, int> seen;
        std::map<std::string, std::string> category;
        for (const auto& e : report.regressions) ++seen[e.test_id], category[e.test_id] = "regression";
        for (const auto& f : report.flakes) ++seen[f.test_id], category[f.test_id] = "flake";
        for (const auto& id : report.always_pass) ++seen[id], category[id] = "always-pass";
        for (const auto& id : report.never_pass) ++seen[id], category[id] = "never-pass";
        for (const auto& id : report.improvements) ++seen[id], category[id] = "improvement";
        expect(seen.size() == static_cast<std::size_t>(count), "length " + std::to_string(len) + ": not covered");
        for (const auto& [id, n] : seen) expect(n == 1, id + " classified " + std::to_string(n) + " times");

        // Cross-check each category against the definitions.
        for (const auto& [id, seq] : sequences) {
            std::string pattern;
            for (auto s : seq) pattern += s == S::PASS ? 'p' : 'f';
            const auto p1 = pattern.find('p');
            const auto f1 = p1 == std::string::npos ? p1 : pattern.find('f', p1);
            const bool flake = f1 != std::string::npos && pattern.find('p', f1) != std::string::npos;
            std::string want;
            if (flake) want = "flake";
            else if (pattern.find('p') == std::string::npos) want = "never-pass";
            else if (pattern.find('f') == std::string::npos) want = "always-pass";
            else if (pattern.back() == 'f') want = "regression";
            else want = "improvement";
            expect(category[id] == want, pattern + " classified as " + category[id] + ", expected " + want);
        }
    }
}

ResultRecord without_times(ResultRecord r) {
    r.compiler_start = r.compiler_end = r.runtime_start = r.runtime_end = Timestamp{};
    return r;
}

void end_to_end() {
    TempDir dir;
    const auto corpus = (fs::path(OMPCONF_FIXTURES) / "mock_corpus").string();
    std::vector<ResultRecord> first;
    for (int repeat = 0; repeat < 5; ++repeat) {
        const auto out = (dir / ("results" + std::to_string(repeat) + ".json")).string();
        const auto t0 = std::chrono::steady_clock::now();
        auto r = ompconf_cli({"run", "--corpus", corpus, "--toolchains", OMPCONF_TOOLCHAINS, "--profile", "mock",
                              "--omp-version", "4.5", "--system", "ci", "--jobs", "4", "--run-timeout", "2",
                              "--workdir", (dir / "work").string(), "-o", out});
        const auto elapsed = std::chrono::steady_clock::now() - t0;
        expect(r.exit_code == 0, "run exited " + std::to_string(r.exit_code.value_or(-1)) + ": " + r.output);
        expect(elapsed < std::chrono::seconds(15), "run took longer than 15 s");
        auto records = parse(read_file(out));
        expect(records.size() == 10, std::to_string(records.size()) + " records");

        std::map<S, int> counts;
        for (const auto& rec : records) ++counts[staged_status(rec)];
        expect(counts[S::PASS] == 6, "pass count " + std::to_string(counts[S::PASS]));
        expect(counts[S::COMPILE_FAIL] == 2, "compile_fail count " + std::to_string(counts[S::COMPILE_FAIL]));
        expect(counts[S::RUNTIME_FAIL] == 2, "runtime_fail count " + std::to_string(counts[S::RUNTIME_FAIL]));
        for (const auto& rec : records) {
            if (rec.test_name == "test_hangs_on_device.c") {
                expect(rec.runtime_result == Status::FAIL && rec.test_comments.find("timed out") != std::string::npos,
                       "timeout fixture not marked as timed out");
            }
            if (rec.test_name == "test_wrong_result.c") {
                expect(rec.test_comments.find("timed out") == std::string::npos, "runtime failure marked as timeout");
            }
        }

        std::vector<ResultRecord> normalized;
        for (const auto& rec : records) normalized.push_back(without_times(rec));
        if (repeat == 0) {
            first = normalized;
        } else {
            expect(normalized == first, "run " + std::to_string(repeat) + " differs from run 0");
        }
    }
}

void version_ordering() {
    std::vector<ToolchainProfile> profiles(3);
    const char* ids[] = {"nvhpc-21.11", "nvhpc-21.7", "nvhpc-21.9"};
    for (int i = 0; i < 3; ++i) {
        profiles[static_cast<std::size_t>(i)].profile_id = ids[i];
        profiles[static_cast<std::size_t>(i)].version_key = *VersionKey::find_any(ids[i]);
    }
    std::mt19937 rng(7);
    for (int round = 0; round < 6; ++round) {
        std::shuffle(profiles.begin(), profiles.end(), rng);
        auto ordered = order_by_version(profiles);
        expect(ordered.size() == 3, "profiles lost while ordering");
        expect(ordered[0].profile_id == "nvhpc-21.7" && ordered[1].profile_id == "nvhpc-21.9" &&
                   ordered[2].profile_id == "nvhpc-21.11",
               "order " + ordered[0].profile_id + ", " + ordered[1].profile_id + ", " + ordered[2].profile_id);
    }
}

void coverage_arithmetic() {
    TempDir dir;
    std::string catalog = "{\"features\": [\n";
    for (int i = 0; i < 10; ++i) {
        catalog += std::string(i ? ",\n" : "") + "  {\"key\": \"f" + std::to_string(i) +
                   "\", \"spec_version\": \"5.0\", \"languages\": [\"C\", \"CXX\", \"FORTRAN\"]}";
        write_file(dir / ("corpus/tests/5.0/c" + std::to_string(i) + ".c"), "//! FEATURE: f" + std::to_string(i) + "\n");
        if (i < 7) {
            write_file(dir / ("corpus/tests/5.0/f" + std::to_string(i) + ".F90"),
                       "!! FEATURE: f" + std::to_string(i) + "\n");
        }
    }
    write_file(dir / "catalog.json", catalog + "\n]}\n");
    auto r = ompconf_cli({"coverage", "--catalog", (dir / "catalog.json").string(), "--corpus",
                          (dir / "corpus").string()});
    expect(r.exit_code == 0, "coverage exited " + std::to_string(r.exit_code.value_or(-1)) + ": " + r.output);
    expect(r.output.find("5.0   Fortran         7     10  70%") != std::string::npos, "no 70% Fortran row: " + r.output);
    expect(r.output.find("5.0   C/C++          10     10  100%") != std::string::npos, "no 100% C/C++ row: " + r.output);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> checks{
        {"golden-json", golden_json},
        {"regression-tables", regression_tables},
        {"intersection-oracle", intersection_oracle},
        {"transition-classifier", transition_classifier},
        {"end-to-end-mock-run", end_to_end},
        {"version-ordering", version_ordering},
        {"coverage-arithmetic", coverage_arithmetic},
    };
    int failed = 0;
    for (const auto& [name, check] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string why;
        try {
            check();
        } catch (const Failure& f) {
            why = f.why;
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        if (why.empty()) {
            std::cout << "PASS " << name << " (" << ms.count() << " ms)\n";
        } else {
            ++failed;
            std::cout << "FAIL " << name << ": " << why << "\n";
        }
    }
    std::cout << (checks.size() - static_cast<std::size_t>(failed)) << "/" << checks.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
