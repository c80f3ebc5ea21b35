#include "ompconf/executor.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ompconf/corpus_manifest.hpp"
#include "ompconf/errors.hpp"
#include "ompconf/toolchain.hpp"

namespace fs = std::filesystem;

namespace ompconf {

void RunConfig::validate() const {
    if (compile_timeout.count() <= 0) throw std::invalid_argument("compile timeout must be positive");
    if (run_timeout.count() <= 0) throw std::invalid_argument("run timeout must be positive");
    if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
}

namespace {

PhaseOutcome from_process(ProcessResult&& result) {
    PhaseOutcome out;
    out.status = result.succeeded() ? Status::PASS : Status::FAIL;
    out.exit_code = result.timed_out ? std::nullopt : result.exit_code;
    out.started_at = result.started_at;
    out.ended_at = result.ended_at;
    out.captured_output = std::move(result.output);
    out.timed_out = result.timed_out;
    out.spawn_failed = result.spawn_failed;
    out.truncated = result.truncated;
    return out;
}

PhaseOutcome instant_failure(std::string why) {
    PhaseOutcome out;
    out.started_at = out.ended_at = std::chrono::system_clock::now();
    out.captured_output = std::move(why);
    return out;
}

std::string seconds_text(std::chrono::milliseconds ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%gs", static_cast<double>(ms.count()) / 1000.0);
    return buf;
}

std::optional<fs::path> working_dir(const RunConfig& cfg) {
    if (cfg.corpus_root.empty()) return std::nullopt;
    return cfg.corpus_root;
}

void phase_notes(std::vector<std::string>& notes, const PhaseOutcome& phase, std::string_view stage,
                 std::chrono::milliseconds limit) {
    if (phase.timed_out) notes.push_back(std::string(stage) + " timed out after " + seconds_text(limit));
    if (phase.spawn_failed) notes.push_back(std::string(stage) + " could not be started");
    if (phase.truncated) notes.push_back(std::string(stage) + " output truncated");
}

std::string log_text(const ResultRecord& r) {
    std::string out;
    out += "test: " + r.test_path + "\n";
    out += "compiler: " + r.compiler_name + "\n";
    out += "command: " + r.compiler_command + "\n";
    out += "compile: " + std::string(to_string(r.compiler_result)) + "\n";
    out += "runtime: " + std::string(to_string(r.runtime_result)) + "\n";
    out += "comments: " + r.test_comments + "\n";
    out += "--- compiler output ---\n" + r.compiler_output;
    out += "\n--- runtime output ---\n" + r.runtime_output + "\n";
    return out;
}

void write_log(const TestCase& test, const ResultRecord& record, const fs::path& workdir) {
    auto path = workdir / "logs" / (test.id.substr(test.id.find('/') + 1) + ".log");
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream(path, std::ios::binary) << log_text(record);
}

ResultRecord harness_failure(const TestCase& test, const RunConfig& cfg, const std::string& why) {
    ResultRecord r;
    r.binary_path = "bin/" + test.name;
    r.omp_version = test.omp_version;
    r.runtime_only = test.runtime_only;
    r.git_commit = test.git_commit;
    r.test_name = test.name;
    r.test_path = test.id;
    r.test_system = cfg.system;
    r.compiler_output = why + "\n";
    r.compiler_start = r.compiler_end = r.runtime_start = r.runtime_end =
        make_timestamp(std::chrono::system_clock::now(), cfg.zone);
    r.test_comments = "harness error";
    return r;
}

}  // namespace

fs::path binary_location(const TestCase& test, const fs::path& workdir) {
    auto rel = test.id.substr(test.id.find('/') + 1);
    return workdir / "bin" / (rel + ".run");
}

CompileOutcome compile(const TestCase& test, const ToolchainProfile& profile, const RunConfig& cfg,
                       const fs::path& workdir) {
    CompileOutcome out;
    out.binary = binary_location(test, workdir);

    TestCase source = test;
    if (cfg.corpus_root.empty()) source.id = test.source_path.string();

    RenderedInvocation inv;
    try {
        inv = render(profile, source, cfg, out.binary);
    } catch (const NoTemplate& e) {
        out.template_error = e.what();
        out.command_display = profile.command_for(test.language);
        out.phase = instant_failure(std::string(e.what()) + "\n");
        return out;
    }
    out.command_display = inv.display;

    std::error_code ec;
    fs::create_directories(out.binary.parent_path(), ec);
    fs::remove(out.binary, ec);

    ProcessSpec spec;
    spec.argv = std::move(inv.argv);
    spec.env = profile.env;
    spec.cwd = working_dir(cfg);
    spec.timeout = cfg.compile_timeout;
    spec.output_cap = cfg.output_cap;
    out.phase = from_process(run_process(spec));
    return out;
}

PhaseOutcome run(const fs::path& binary, const ToolchainProfile& profile, const RunConfig& cfg) {
    ProcessSpec spec;
    spec.argv = {fs::absolute(binary).string()};
    spec.env = profile.env;
    spec.cwd = working_dir(cfg);
    spec.timeout = cfg.run_timeout;
    spec.output_cap = cfg.output_cap;
    return from_process(run_process(spec));
}

ResultRecord execute_one(const TestCase& test, const ToolchainProfile& profile, const RunConfig& cfg,
                         const fs::path& workdir) {
    ResultRecord r;
    r.binary_path = "bin/" + test.name;
    r.compiler_name = profile.compiler_name_for(test.language);
    r.omp_version = test.omp_version;
    r.runtime_only = test.runtime_only;
    r.git_commit = test.git_commit;
    r.test_name = test.name;
    r.test_path = test.id;
    r.test_system = cfg.system;

    std::vector<std::string> notes;
    CompileOutcome compiled;
    if (test.runtime_only) {
        compiled.binary = binary_location(test, workdir);
        std::error_code ec;
        if (fs::exists(compiled.binary, ec)) {
            compiled.phase.status = Status::PASS;
            compiled.phase.exit_code = 0;
            compiled.phase.started_at = compiled.phase.ended_at = std::chrono::system_clock::now();
        } else {
            compiled.phase = instant_failure("prebuilt binary " + compiled.binary.string() + " not found\n");
            notes.push_back("runtime-only test has no prebuilt binary");
        }
    } else {
        compiled = compile(test, profile, cfg, workdir);
        if (compiled.template_error) notes.push_back("no flag template");
        phase_notes(notes, compiled.phase, "compile", cfg.compile_timeout);
    }

    r.compiler_command = compiled.command_display;
    r.compiler_output = compiled.phase.captured_output;
    r.compiler_result = compiled.phase.status;
    r.compiler_start = make_timestamp(compiled.phase.started_at, cfg.zone);
    r.compiler_end = make_timestamp(compiled.phase.ended_at, cfg.zone);

    if (compiled.phase.status == Status::PASS) {
        auto ran = run(compiled.binary, profile, cfg);
        phase_notes(notes, ran, "run", cfg.run_timeout);
        r.runtime_output = std::move(ran.captured_output);
        r.runtime_result = ran.status;
        r.runtime_start = make_timestamp(ran.started_at, cfg.zone);
        r.runtime_end = make_timestamp(ran.ended_at, cfg.zone);
    } else {
        r.runtime_result = Status::FAIL;
        r.runtime_start = r.compiler_end;
        r.runtime_end = r.compiler_end;
    }

    std::string comments = test.comment == "none" && !notes.empty() ? std::string() : test.comment;
    for (const auto& note : notes) {
        if (!comments.empty()) comments += "; ";
        comments += note;
    }
    r.test_comments = comments;
    return r;
}

std::vector<ResultRecord> execute_batch(const Manifest& manifest, const ToolchainProfile& profile,
                                        const RunConfig& cfg, const fs::path& workdir,
                                        const BatchObserver& observer) {
    cfg.validate();
    RunConfig effective = cfg;
    if (effective.corpus_root.empty()) effective.corpus_root = manifest.corpus_root;

    const auto count = manifest.tests.size();
    std::vector<ResultRecord> records(count);
    std::atomic<std::size_t> next{0};
    std::mutex observer_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            const auto& test = manifest.tests[i];
            try {
                records[i] = execute_one(test, profile, effective, workdir);
            } catch (const std::exception& e) {
                records[i] = harness_failure(test, effective, e.what());
            }
            const bool failed = records[i].compiler_result == Status::FAIL ||
                                records[i].runtime_result == Status::FAIL;
            if (effective.log_all || (effective.log && failed)) write_log(test, records[i], workdir);
            if (observer) {
                std::lock_guard lock(observer_mutex);
                observer(i, test, records[i]);
            }
        }
    };

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(effective.parallelism), count);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    return records;
}

}  // namespace ompconf
