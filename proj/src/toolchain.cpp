#include "ompconf/toolchain.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ompconf/corpus_manifest.hpp"
#include "ompconf/errors.hpp"
#include "ompconf/executor.hpp"
#include "ompconf/process.hpp"

namespace ompconf {

using nlohmann::json;

const std::string& ToolchainProfile::command_for(Language lang) const {
    static const std::string empty;
    auto it = commands.find(lang);
    return it == commands.end() ? empty : it->second;
}

std::string ToolchainProfile::compiler_name_for(Language lang) const {
    auto it = compiler_names.find(lang);
    if (it != compiler_names.end()) return it->second;
    return command_for(lang);
}

const std::vector<std::string>* ToolchainProfile::find_template(Language lang, OmpVersion version,
                                                                DeviceType device) const {
    const TemplateKey candidates[] = {
        {lang, version, device},
        {lang, version, std::nullopt},
        {lang, std::nullopt, device},
        {lang, std::nullopt, std::nullopt},
        {std::nullopt, std::nullopt, std::nullopt},
    };
    for (const auto& key : candidates) {
        auto it = flag_template.find(key);
        if (it != flag_template.end()) return &it->second;
    }
    return nullptr;
}

namespace {

[[noreturn]] void semantic(const std::string& message) {
    throw ConfigError(ConfigError::Kind::ConfigSemantic, message);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            semantic("unknown key \"" + key + "\" in " + where);
        }
    }
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) semantic("missing \"" + std::string(key) + "\" in " + where);
    if (!it->is_string()) semantic("\"" + std::string(key) + "\" in " + where + " must be a string");
    return it->get<std::string>();
}

template <class T, class Parse>
std::optional<T> wildcard(const json& row, const char* key, const std::string& where, Parse parse) {
    auto text = row.contains(key) ? require_string(row, key, where) : std::string("*");
    if (text == "*") return std::nullopt;
    auto parsed = parse(text);
    if (!parsed) semantic("bad " + std::string(key) + " \"" + text + "\" in " + where);
    return *parsed;
}

std::string key_text(const TemplateKey& key) {
    auto part = [](const auto& v) { return v ? std::string(to_string(*v)) : std::string("*"); };
    return "(" + part(key.language) + ", " + part(key.omp_version) + ", " + part(key.device_type) + ")";
}

ToolchainProfile profile_from_json(const json& obj, std::size_t index) {
    std::string where = "profiles[" + std::to_string(index) + "]";
    if (!obj.is_object()) semantic(where + " must be an object");
    reject_unknown(obj, {"id", "family", "commands", "version_flag", "env", "templates"}, where);

    ToolchainProfile p;
    p.profile_id = require_string(obj, "id", where);
    if (p.profile_id.empty()) semantic(where + " has an empty id");
    where = "profile \"" + p.profile_id + "\"";
    p.family = obj.contains("family") ? require_string(obj, "family", where) : p.profile_id;
    if (obj.contains("version_flag")) p.version_flag = require_string(obj, "version_flag", where);

    if (obj.contains("commands")) {
        const auto& cmds = obj["commands"];
        if (!cmds.is_object()) semantic("\"commands\" in " + where + " must be an object");
        for (const auto& [lang_text, cmd] : cmds.items()) {
            auto lang = parse_language(lang_text);
            if (!lang) semantic("unknown language \"" + lang_text + "\" in " + where);
            if (!cmd.is_string() || cmd.get<std::string>().empty()) {
                semantic("command for " + lang_text + " in " + where + " must be a non-empty string");
            }
            p.commands[*lang] = cmd.get<std::string>();
        }
    }

    if (obj.contains("env")) {
        const auto& env = obj["env"];
        if (!env.is_object()) semantic("\"env\" in " + where + " must be an object");
        for (const auto& [name, value] : env.items()) {
            if (!value.is_string()) semantic("env \"" + name + "\" in " + where + " must be a string");
            p.env[name] = value.get<std::string>();
        }
    }

    if (obj.contains("templates")) {
        const auto& rows = obj["templates"];
        if (!rows.is_array()) semantic("\"templates\" in " + where + " must be an array");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            const auto row_where = where + " templates[" + std::to_string(i) + "]";
            if (!row.is_object()) semantic(row_where + " must be an object");
            reject_unknown(row, {"language", "omp_version", "device_type", "flags"}, row_where);
            TemplateKey key{wildcard<Language>(row, "language", row_where, parse_language),
                            wildcard<OmpVersion>(row, "omp_version", row_where, parse_omp_version),
                            wildcard<DeviceType>(row, "device_type", row_where, parse_device_type)};
            if (!row.contains("flags") || !row["flags"].is_array()) {
                semantic(row_where + " needs a \"flags\" array");
            }
            std::vector<std::string> flags;
            for (const auto& f : row["flags"]) {
                if (!f.is_string()) semantic(row_where + " flags must be strings");
                flags.push_back(f.get<std::string>());
            }
            if (!p.flag_template.emplace(key, std::move(flags)).second) {
                semantic("duplicate template row " + key_text(key) + " in " + where);
            }
        }
    }

    if (auto key = VersionKey::find_any(p.profile_id)) p.version_key = *key;
    return p;
}

// nlohmann reports a 1-based byte offset; convert it to line/column.
std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

std::vector<ToolchainProfile> parse_profiles(std::string_view config_text) {
    json doc;
    try {
        doc = json::parse(config_text.begin(), config_text.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(config_text, e.byte);
        throw ConfigError(ConfigError::Kind::ConfigSyntax,
                          "syntax error at line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ": " + e.what(),
                          line, column);
    }
    if (!doc.is_object()) semantic("top level must be an object");
    reject_unknown(doc, {"profiles"}, "top level");
    if (!doc.contains("profiles") || !doc["profiles"].is_array()) semantic("missing \"profiles\" array");

    std::vector<ToolchainProfile> profiles;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < doc["profiles"].size(); ++i) {
        auto p = profile_from_json(doc["profiles"][i], i);
        if (!seen.insert(p.profile_id).second) semantic("duplicate profile id \"" + p.profile_id + "\"");
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<ToolchainProfile> load_profiles(const std::filesystem::path& config_path) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        throw ConfigError(ConfigError::Kind::ConfigNotFound,
                          "toolchain config '" + config_path.string() + "' not found");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profiles(buf.str());
}

ToolchainProfile probe_version(const ToolchainProfile& profile) {
    ToolchainProfile probed = profile;
    probed.compiler_names.clear();
    bool any = false;
    for (const auto lang : {Language::C, Language::CXX, Language::FORTRAN}) {
        const auto& command = profile.command_for(lang);
        if (command.empty()) continue;

        ProcessSpec spec;
        spec.argv = {command};
        if (!profile.version_flag.empty()) spec.argv.push_back(profile.version_flag);
        spec.env = profile.env;
        spec.timeout = std::chrono::seconds(30);
        auto result = run_process(spec);
        if (!result.succeeded()) {
            probed.diagnostics.push_back("version probe of '" + command + "' failed: " +
                                         result.output.substr(0, result.output.find('\n')));
            continue;
        }
        const auto banner = result.output.substr(0, result.output.find_first_of("\r\n"));
        const auto name = banner.empty() ? command : command + " " + banner;
        probed.compiler_names[lang] = name;
        if (!any) {
            any = true;
            probed.version_text = name;
            if (auto key = VersionKey::find_dotted(banner)) probed.version_key = *key;
        }
    }
    if (!any) {
        throw ProbeFailed("could not probe any compiler of profile '" + profile.profile_id + "'" +
                          (probed.diagnostics.empty() ? std::string() : ": " + probed.diagnostics.front()));
    }
    return probed;
}

std::string join_display(const std::vector<std::string>& argv) {
    std::string out;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

RenderedInvocation render(const ToolchainProfile& profile, const TestCase& test, const RunConfig& cfg,
                          const std::filesystem::path& binary) {
    const auto& command = profile.command_for(test.language);
    if (command.empty()) {
        throw NoTemplate("profile '" + profile.profile_id + "' has no " +
                         std::string(to_string(test.language)) + " command");
    }
    const auto* flags = profile.find_template(test.language, cfg.omp_version, cfg.device_type);
    if (!flags) {
        throw NoTemplate("profile '" + profile.profile_id + "' has no flag template for (" +
                         std::string(to_string(test.language)) + ", " +
                         std::string(to_string(cfg.omp_version)) + ", " +
                         std::string(to_string(cfg.device_type)) + ") and no default row");
    }
    RenderedInvocation inv;
    inv.argv.push_back(command);
    inv.argv.insert(inv.argv.end(), flags->begin(), flags->end());
    inv.argv.push_back(test.id);
    inv.argv.push_back("-o");
    inv.argv.push_back(binary.string());
    inv.display = join_display(inv.argv);
    return inv;
}

std::vector<ToolchainProfile> order_by_version(std::vector<ToolchainProfile> profiles,
                                               std::vector<std::string>* dropped) {
    std::vector<ToolchainProfile> kept;
    for (auto& p : profiles) {
        if (p.version_key.empty()) {
            if (dropped) dropped->push_back("profile '" + p.profile_id + "' has no parsable version");
            continue;
        }
        kept.push_back(std::move(p));
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.version_key < b.version_key; });
    return kept;
}

}  // namespace ompconf
