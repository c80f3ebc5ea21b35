#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ompconf/analysis.hpp"
#include "ompconf/corpus_manifest.hpp"
#include "ompconf/errors.hpp"
#include "ompconf/executor.hpp"
#include "ompconf/reporting.hpp"
#include "ompconf/result_model.hpp"
#include "ompconf/toolchain.hpp"

namespace fs = std::filesystem;

namespace ompconf::cli {
namespace {

// Raised inside subcommands to leave with a specific exit code.
struct Exit {
    int code;
    std::string message;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << bytes;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Exit{kConfigError, "cannot write '" + path + "'"};
    file << bytes;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit{kInputError, "cannot read result file '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunOptions {
    std::string corpus;
    std::string toolchains;
    std::string profile;
    std::string cc, cxx, fc;
    std::string omp_version;
    std::string device_type = "none";
    std::string system = "unknown";
    std::string languages;
    bool log = false, log_all = false, verbose = false, verbose_tests = false;
    int jobs = 1;
    double compile_timeout = 120.0;
    double run_timeout = 60.0;
    std::string workdir = "ompconf-work";
    std::string output = "results.json";
    std::string timezone_label = "UTC";
    int utc_offset_minutes = 0;
    std::size_t output_cap = kDefaultOutputCap;
    bool strict = false;
};

struct ReportOptions {
    std::string kind;
    std::vector<std::string> files;
    std::string output;
    std::string order;
    std::string labels;
    std::string family;
    std::string omp_version;
    std::string language_group = "C/C++";
};

struct CoverageOptions {
    std::string catalog;
    std::string corpus;
    std::string output;
};

ToolchainProfile select_profile(const RunOptions& o, std::ostream& err) {
    ToolchainProfile profile;
    if (!o.toolchains.empty()) {
        auto profiles = load_profiles(o.toolchains);
        if (o.profile.empty()) {
            if (profiles.size() != 1) {
                throw ConfigError(ConfigError::Kind::ConfigSemantic,
                                  "config defines " + std::to_string(profiles.size()) +
                                      " profiles; choose one with --profile");
            }
            profile = profiles.front();
        } else {
            auto it = std::find_if(profiles.begin(), profiles.end(),
                                   [&](const auto& p) { return p.profile_id == o.profile; });
            if (it == profiles.end()) {
                throw ConfigError(ConfigError::Kind::ConfigSemantic, "no profile '" + o.profile + "' in " + o.toolchains);
            }
            profile = *it;
        }
    } else if (!o.cc.empty() || !o.cxx.empty() || !o.fc.empty()) {
        // Make-style invocation without a config file.
        const auto& lead = !o.cc.empty() ? o.cc : (!o.cxx.empty() ? o.cxx : o.fc);
        profile.profile_id = o.profile.empty() ? fs::path(lead).filename().string() : o.profile;
        profile.family = fs::path(lead).filename().string();
        profile.flag_template[TemplateKey{}] = {"-I./ompvv", "-fopenmp"};
        if (auto key = VersionKey::find_any(profile.profile_id)) profile.version_key = *key;
    } else {
        throw ConfigError(ConfigError::Kind::ConfigSemantic, "no toolchain: pass --toolchains or --cc/--cxx/--fc");
    }

    if (!o.cc.empty()) profile.commands[Language::C] = o.cc;
    if (!o.cxx.empty()) profile.commands[Language::CXX] = o.cxx;
    if (!o.fc.empty()) profile.commands[Language::FORTRAN] = o.fc;

    try {
        profile = probe_version(profile);
    } catch (const ProbeFailed& e) {
        err << "ompconf: warning: " << e.what() << "\n";
    }
    for (const auto& d : profile.diagnostics) err << "ompconf: warning: " << d << "\n";
    return profile;
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    auto version = parse_omp_version(o.omp_version);
    if (!version) throw Exit{kConfigError, "--omp-version must be one of 4.5, 5.0, 5.1, 5.2"};
    cfg.omp_version = *version;
    auto device = parse_device_type(o.device_type);
    if (!device) throw Exit{kConfigError, "--device-type must be one of nvidia, amd, host, none"};
    cfg.device_type = *device;
    cfg.system = o.system;
    cfg.compile_timeout = std::chrono::milliseconds(static_cast<long long>(o.compile_timeout * 1000));
    cfg.run_timeout = std::chrono::milliseconds(static_cast<long long>(o.run_timeout * 1000));
    cfg.parallelism = o.jobs;
    cfg.log = o.log;
    cfg.log_all = o.log_all;
    cfg.verbose = o.verbose;
    cfg.verbose_tests = o.verbose_tests;
    cfg.zone = ZoneSpec{o.timezone_label, std::chrono::minutes(o.utc_offset_minutes)};
    cfg.output_cap = o.output_cap;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw Exit{kConfigError, e.what()};
    }

    VersionLanguageFilter filter;
    filter.versions.insert(cfg.omp_version);
    for (const auto& l : split_list(o.languages)) {
        auto lang = parse_language(l);
        if (!lang) throw Exit{kConfigError, "unknown language '" + l + "'"};
        filter.languages.insert(*lang);
    }

    auto profile = select_profile(o, err);
    auto manifest = discover(o.corpus, filter);
    for (const auto& d : manifest.diagnostics) err << "ompconf: warning: " << d << "\n";

    const fs::path workdir = fs::absolute(o.workdir);
    auto observer = [&](std::size_t, const TestCase& test, const ResultRecord& r) {
        if (cfg.verbose || cfg.verbose_tests) {
            err << "[ompconf] " << test.id << ": compile " << to_string(r.compiler_result) << ", run "
                << to_string(r.runtime_result) << "\n";
        }
        if (cfg.verbose_tests) err << r.compiler_output << r.runtime_output;
    };
    auto records = execute_batch(manifest, profile, cfg, workdir, observer);
    write_output(o.output, serialize(records), out);

    std::size_t passed = 0;
    for (const auto& r : records) passed += staged_status(r) == StagedStatus::PASS;
    if (cfg.verbose) err << "[ompconf] " << passed << "/" << records.size() << " tests passed\n";
    return o.strict && passed != records.size() ? kTestsFailed : kOk;
}

std::vector<ResultSet> load_sets(const ReportOptions& o) {
    const auto order = split_list(o.order);
    const auto labels = split_list(o.labels);
    if (!order.empty() && order.size() != o.files.size()) {
        throw Exit{kConfigError, "--order needs one version per input file"};
    }
    if (!labels.empty() && labels.size() != o.files.size()) {
        throw Exit{kConfigError, "--labels needs one label per input file"};
    }

    std::vector<ResultSet> sets;
    for (std::size_t i = 0; i < o.files.size(); ++i) {
        const auto& file = o.files[i];
        std::vector<ResultRecord> records;
        try {
            records = parse(read_file(file));
        } catch (const ResultParseError& e) {
            throw Exit{kInputError, file + ": " + e.what()};
        }
        const auto stem = fs::path(file).stem().string();
        const auto profile_id = labels.empty() ? stem : labels[i];

        VersionKey key;
        if (!order.empty()) {
            auto parsed = VersionKey::parse(order[i]);
            if (!parsed) throw Exit{kConfigError, "bad version '" + order[i] + "' in --order"};
            key = *parsed;
        } else if (auto banner = records.empty() ? std::nullopt : VersionKey::find_dotted(records.front().compiler_name)) {
            key = *banner;
        } else if (auto from_stem = VersionKey::find_any(stem)) {
            key = *from_stem;
        }

        auto grouped = group_into_sets(records, profile_id, o.family, key);
        if (grouped.empty()) {
            ResultSet empty;
            empty.profile_id = profile_id;
            empty.family = o.family;
            empty.version_key = key;
            grouped.push_back(std::move(empty));
        }
        sets.insert(sets.end(), grouped.begin(), grouped.end());
    }
    return sets;
}

int cmd_report(const ReportOptions& o, std::ostream& out) {
    auto sets = load_sets(o);
    std::string bytes;
    try {
        if (o.kind == "summary") {
            bytes = report_summary(sets);
        } else if (o.kind == "json") {
            bytes = report_json(sets);
        } else if (o.kind == "regressions") {
            auto matrix = build_matrix(sets);
            bytes = report_regressions(matrix, detect_regressions(matrix));
        } else if (o.kind == "series") {
            bytes = report_series(maturity_series(build_matrix(sets)));
        } else if (o.kind == "intersection") {
            auto version = parse_omp_version(o.omp_version);
            auto group = parse_language_group(o.language_group);
            if (!version || !group) throw Exit{kConfigError, "intersection needs --omp-version and --language-group"};
            std::map<std::string, std::vector<ResultSet>> by_profile;
            for (auto& s : sets) by_profile[s.profile_id].push_back(std::move(s));
            std::map<std::string, ResultMatrix> matrices;
            for (const auto& [id, group_sets] : by_profile) matrices[id] = build_matrix(group_sets);
            bytes = report_intersection(intersection_stats(matrices, *version, *group));
        } else {
            throw Exit{kConfigError, "unknown report '" + o.kind + "'"};
        }
    } catch (const AnalysisError& e) {
        throw Exit{kInputError, e.what()};
    }
    write_output(o.output, bytes, out);
    return kOk;
}

int cmd_coverage(const CoverageOptions& o, std::ostream& out) {
    auto catalog = load_catalog(o.catalog);
    auto manifest = discover(o.corpus);
    std::vector<CoverageStat> stats;
    try {
        stats = coverage(catalog, manifest);
    } catch (const AnalysisError& e) {
        throw Exit{kConfigError, e.what()};
    }
    write_output(o.output, report_coverage(stats), out);
    return kOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ompconf: multi-compiler OpenMP conformance harness"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Discover, compile and run a corpus with one toolchain");
    run->add_option("--corpus", run_opts.corpus, "Corpus root (or its tests/ directory)")->required();
    run->add_option("--toolchains", run_opts.toolchains, "Toolchain config file");
    run->add_option("--profile", run_opts.profile, "Profile id in the toolchain config");
    run->add_option("--cc", run_opts.cc, "C compiler command")->envname("CC");
    run->add_option("--cxx", run_opts.cxx, "C++ compiler command")->envname("CXX");
    run->add_option("--fc", run_opts.fc, "Fortran compiler command")->envname("FC");
    run->add_option("--omp-version", run_opts.omp_version, "4.5, 5.0, 5.1 or 5.2")->envname("OMP_VERSION");
    run->add_option("--device-type", run_opts.device_type, "nvidia, amd, host or none")->envname("DEVICE_TYPE");
    run->add_option("--system", run_opts.system, "System label recorded as \"Test system\"")->envname("SYSTEM");
    run->add_option("--languages", run_opts.languages, "Comma-separated subset of C,CXX,FORTRAN");
    run->add_flag("--log", run_opts.log, "Keep logs of failing tests")->envname("LOG");
    run->add_flag("--log-all", run_opts.log_all, "Keep logs of all tests")->envname("LOG_ALL");
    run->add_flag("--verbose", run_opts.verbose, "Report progress")->envname("VERBOSE");
    run->add_flag("--verbose-tests", run_opts.verbose_tests, "Echo test output")->envname("VERBOSE_TESTS");
    run->add_option("-j,--jobs", run_opts.jobs, "Parallel workers")->check(CLI::PositiveNumber);
    run->add_option("--compile-timeout", run_opts.compile_timeout, "Seconds");
    run->add_option("--run-timeout", run_opts.run_timeout, "Seconds");
    run->add_option("--workdir", run_opts.workdir, "Binaries and logs go here");
    run->add_option("-o,--output", run_opts.output, "results.json path ('-' for stdout)");
    run->add_option("--timezone-label", run_opts.timezone_label, "Zone label written into timestamps");
    run->add_option("--utc-offset", run_opts.utc_offset_minutes, "Minutes east of UTC for timestamps");
    run->add_option("--output-cap", run_opts.output_cap, "Max captured bytes per phase");
    run->add_flag("--strict", run_opts.strict, "Exit 1 unless every test passes");

    ReportOptions report_opts;
    auto* report = app.add_subcommand("report", "Render reports from results.json files");
    report->add_option("kind", report_opts.kind, "summary, json, regressions, series or intersection")
        ->required()
        ->check(CLI::IsMember({"summary", "json", "regressions", "series", "intersection"}));
    report->add_option("files", report_opts.files, "Result files")->required();
    report->add_option("-o,--output", report_opts.output, "Output path (default stdout)");
    report->add_option("--order", report_opts.order, "Comma-separated version per input file, e.g. 13,14,15");
    report->add_option("--labels", report_opts.labels, "Comma-separated column label per input file");
    report->add_option("--family", report_opts.family, "Compiler family shared by all inputs");
    report->add_option("--omp-version", report_opts.omp_version, "intersection: OpenMP version");
    report->add_option("--language-group", report_opts.language_group, "intersection: C/C++ or Fortran");

    CoverageOptions coverage_opts;
    auto* cov = app.add_subcommand("coverage", "Feature coverage of a corpus against a catalog");
    cov->add_option("--catalog", coverage_opts.catalog, "Feature catalog file")->required();
    cov->add_option("--corpus", coverage_opts.corpus, "Corpus root")->required();
    cov->add_option("-o,--output", coverage_opts.output, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(run_opts, out, err);
        if (*report) return cmd_report(report_opts, out);
        if (*cov) return cmd_coverage(coverage_opts, out);
    } catch (const Exit& e) {
        err << "ompconf: " << e.message << "\n";
        return e.code;
    } catch (const ConfigError& e) {
        err << "ompconf: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const CorpusError& e) {
        err << "ompconf: corpus error: " << e.what() << "\n";
        return kCorpusError;
    }
    return kConfigError;
}

}  // namespace ompconf::cli
