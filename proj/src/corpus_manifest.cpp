#include "ompconf/corpus_manifest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "ompconf/errors.hpp"
#include "ompconf/process.hpp"

namespace fs = std::filesystem;

namespace ompconf {

std::optional<PathIdentity> identity_from_id(std::string_view id) {
    constexpr std::string_view prefix = "tests/";
    if (id.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto rest = id.substr(prefix.size());
    auto slash = rest.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    auto version = parse_omp_version(rest.substr(0, slash));
    if (!version) return std::nullopt;
    rest = rest.substr(slash + 1);

    auto last = rest.find_last_of('/');
    std::string_view category = last == std::string_view::npos ? std::string_view{} : rest.substr(0, last);
    std::string_view name = last == std::string_view::npos ? rest : rest.substr(last + 1);
    if (name.empty()) return std::nullopt;
    auto language = language_from_path(name);
    if (!language) return std::nullopt;
    return PathIdentity{std::string(name), *language, *version, std::string(category)};
}

const TestCase* Manifest::find(std::string_view id) const {
    auto it = std::lower_bound(tests.begin(), tests.end(), id,
                               [](const TestCase& t, std::string_view key) { return t.id < key; });
    return it != tests.end() && it->id == id ? &*it : nullptr;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Returns the text after a `//!` or `!!` marker, or nullopt.
std::optional<std::string_view> magic_body(std::string_view line) {
    line = trim(line);
    for (std::string_view marker : {"//!", "!!"}) {
        if (line.substr(0, marker.size()) == marker) return trim(line.substr(marker.size()));
    }
    return std::nullopt;
}

std::optional<std::string_view> directive_value(std::string_view body, std::string_view directive) {
    if (body.substr(0, directive.size()) != directive) return std::nullopt;
    auto rest = body.substr(directive.size());
    if (rest.empty() || rest.front() != ':') return std::nullopt;
    return trim(rest.substr(1));
}

fs::path resolve_corpus_root(const fs::path& given) {
    std::error_code ec;
    if (!fs::is_directory(given, ec)) {
        throw CorpusError(CorpusError::Kind::MissingCorpusRoot,
                          "corpus root '" + given.string() + "' does not exist or is not a directory");
    }
    auto root = fs::weakly_canonical(fs::absolute(given));
    if (fs::is_directory(root / "tests", ec)) return root;
    if (root.filename() == "tests") return root.parent_path();
    // Bare tree with no tests/ subdirectory: still a valid (empty) corpus.
    return root;
}

struct Walker {
    const fs::path& corpus_root;
    const VersionLanguageFilter& filter;
    std::string git_commit;
    std::vector<TestCase> found;
    std::vector<fs::path> stack;  // canonical ancestors for cycle detection

    void walk(const fs::path& dir, const std::string& rel) {
        std::error_code ec;
        auto canonical = fs::canonical(dir, ec);
        if (ec) return;
        if (std::find(stack.begin(), stack.end(), canonical) != stack.end()) {
            throw CorpusError(CorpusError::Kind::SymlinkCycle,
                              "symlink cycle at '" + dir.string() + "' -> '" + canonical.string() + "'");
        }
        stack.push_back(canonical);

        std::vector<fs::directory_entry> entries;
        for (const auto& entry : fs::directory_iterator(dir, ec)) entries.push_back(entry);
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });

        for (const auto& entry : entries) {
            const auto child_rel = rel + "/" + entry.path().filename().string();
            std::error_code sec;
            if (entry.is_directory(sec)) {
                walk(entry.path(), child_rel);
            } else if (entry.is_regular_file(sec)) {
                visit_file(entry.path(), child_rel);
            }
        }
        stack.pop_back();
    }

    void visit_file(const fs::path& file, const std::string& id) {
        auto identity = identity_from_id(id);
        if (!identity || !filter.accepts(identity->omp_version, identity->language)) return;

        TestCase test;
        test.id = id;
        test.name = identity->name;
        test.language = identity->language;
        test.omp_version = identity->omp_version;
        test.category = identity->category;
        test.source_path = fs::weakly_canonical(file);
        test.git_commit = git_commit;
        auto notes = read_annotations(file);
        test.feature_tags = std::move(notes.features);
        test.runtime_only = notes.runtime_only;
        if (notes.comment) test.comment = *notes.comment;
        found.push_back(std::move(test));
    }
};

}  // namespace

Annotations read_annotations(const fs::path& source_path) {
    std::ifstream in(source_path);
    if (!in) {
        throw CorpusError(CorpusError::Kind::UnreadableSource,
                          "cannot read test source '" + source_path.string() + "'");
    }
    Annotations notes;
    std::string line;
    while (std::getline(in, line)) {
        auto body = magic_body(line);
        if (!body) continue;
        if (auto feature = directive_value(*body, "FEATURE")) {
            if (!feature->empty()) notes.features.emplace_back(*feature);
        } else if (auto comment = directive_value(*body, "COMMENT")) {
            if (!comment->empty()) notes.comment = std::string(*comment);
        } else if (*body == "RUNTIME_ONLY") {
            notes.runtime_only = true;
        }
    }
    return notes;
}

std::vector<std::string> parse_annotations(const fs::path& source_path) {
    return read_annotations(source_path).features;
}

Manifest discover(const fs::path& corpus_root, const VersionLanguageFilter& filter) {
    Manifest manifest;
    manifest.corpus_root = resolve_corpus_root(corpus_root);

    Walker walker{manifest.corpus_root, filter, probe_git_commit(manifest.corpus_root), {}, {}};
    const auto tests_dir = manifest.corpus_root / "tests";
    std::error_code ec;
    if (fs::is_directory(tests_dir, ec)) walker.walk(tests_dir, "tests");

    std::sort(walker.found.begin(), walker.found.end(),
              [](const TestCase& a, const TestCase& b) { return a.id < b.id; });
    manifest.tests = std::move(walker.found);
    manifest.discovered_at = std::chrono::system_clock::now();
    if (manifest.tests.empty()) {
        manifest.diagnostics.push_back("NoTestsFound: no tests under '" + tests_dir.string() +
                                       "' match the requested versions and languages");
    }
    return manifest;
}

std::string probe_git_commit(const fs::path& corpus_root) {
    auto git = [&](std::vector<std::string> args) {
        ProcessSpec spec;
        spec.argv = {"git", "-C", corpus_root.string()};
        spec.argv.insert(spec.argv.end(), args.begin(), args.end());
        spec.timeout = std::chrono::seconds(10);
        spec.env["GIT_OPTIONAL_LOCKS"] = "0";
        return run_process(spec);
    };

    auto head = git({"rev-parse", "--short=7", "HEAD"});
    if (!head.succeeded()) return "unknown";
    std::string hash = head.output.substr(0, head.output.find_first_of("\r\n"));
    if (hash.size() < 7 || hash.size() > 40 ||
        !std::all_of(hash.begin(), hash.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); })) {
        return "unknown";
    }

    auto status = git({"status", "--porcelain", "--untracked-files=no", "--", "."});
    if (status.succeeded() && !status.output.empty()) hash += "-dirty";
    return hash;
}

}  // namespace ompconf
