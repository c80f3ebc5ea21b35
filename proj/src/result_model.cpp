#include "ompconf/result_model.hpp"

#include <map>
#include <stdexcept>

#include <json.hpp>

#include "ompconf/errors.hpp"

namespace ompconf {

using nlohmann::json;

void ResultSet::validate() const {
    for (const auto& r : records) {
        if (r.test_system != system) {
            throw std::invalid_argument("record '" + r.test_path + "' has system '" + r.test_system +
                                        "', expected '" + system + "'");
        }
        if (r.omp_version != omp_version) {
            throw std::invalid_argument("record '" + r.test_path + "' has OMP version " +
                                        std::string(to_string(r.omp_version)) + ", expected " +
                                        std::string(to_string(omp_version)));
        }
    }
}

namespace {

json to_json(const ResultRecord& r) {
    // nlohmann::json objects are std::map backed, so keys come out in ascending order.
    json obj = json::object();
    obj[keys::kBinaryPath] = r.binary_path;
    obj[keys::kCompilerCommand] = r.compiler_command;
    obj[keys::kCompilerEnd] = format_timestamp(r.compiler_end);
    obj[keys::kCompilerName] = r.compiler_name;
    obj[keys::kCompilerOutput] = r.compiler_output;
    obj[keys::kCompilerResult] = to_string(r.compiler_result);
    obj[keys::kCompilerStart] = format_timestamp(r.compiler_start);
    obj[keys::kOmpVersion] = to_string(r.omp_version);
    obj[keys::kRuntimeEnd] = format_timestamp(r.runtime_end);
    obj[keys::kRuntimeOnly] = r.runtime_only;
    obj[keys::kRuntimeOutput] = r.runtime_output;
    obj[keys::kRuntimeResult] = to_string(r.runtime_result);
    obj[keys::kRuntimeStart] = format_timestamp(r.runtime_start);
    obj[keys::kTestComments] = r.test_comments;
    obj[keys::kGitCommit] = r.git_commit;
    obj[keys::kTestName] = r.test_name;
    obj[keys::kTestPath] = r.test_path;
    obj[keys::kTestSystem] = r.test_system;
    return obj;
}

[[noreturn]] void schema(std::string_view key, const std::string& why) {
    throw ResultParseError(ResultParseError::Kind::SchemaViolation, std::string(key),
                           "schema violation at \"" + std::string(key) + "\": " + why);
}

const json& field(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end()) schema(key, "missing key");
    return *it;
}

std::string text(const json& obj, std::string_view key) {
    const auto& v = field(obj, key);
    if (!v.is_string()) schema(key, "expected a string");
    return v.get<std::string>();
}

Status status(const json& obj, std::string_view key) {
    auto value = text(obj, key);
    auto parsed = parse_status(value);
    if (!parsed) {
        throw ResultParseError(ResultParseError::Kind::BadEnumValue, std::string(key),
                               "bad value \"" + value + "\" for \"" + std::string(key) +
                                   "\" (expected PASS or FAIL)");
    }
    return *parsed;
}

Timestamp timestamp(const json& obj, std::string_view key) {
    auto value = text(obj, key);
    try {
        return parse_timestamp(value);
    } catch (const MalformedTimestamp& e) {
        throw ResultParseError(ResultParseError::Kind::MalformedTimestamp, std::string(key),
                               "\"" + std::string(key) + "\": " + e.what());
    }
}

ResultRecord from_json(const json& obj) {
    if (!obj.is_object()) schema("", "array element is not an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto k : keys::kAll) known = known || k == key;
        if (!known) schema(key, "unknown key");
    }

    ResultRecord r;
    r.binary_path = text(obj, keys::kBinaryPath);
    r.compiler_command = text(obj, keys::kCompilerCommand);
    r.compiler_end = timestamp(obj, keys::kCompilerEnd);
    r.compiler_name = text(obj, keys::kCompilerName);
    r.compiler_output = text(obj, keys::kCompilerOutput);
    r.compiler_result = status(obj, keys::kCompilerResult);
    r.compiler_start = timestamp(obj, keys::kCompilerStart);

    auto version = text(obj, keys::kOmpVersion);
    auto parsed_version = parse_omp_version(version);
    if (!parsed_version) {
        throw ResultParseError(ResultParseError::Kind::BadEnumValue, std::string(keys::kOmpVersion),
                               "bad value \"" + version + "\" for \"OMP version\"");
    }
    r.omp_version = *parsed_version;

    r.runtime_end = timestamp(obj, keys::kRuntimeEnd);
    const auto& runtime_only = field(obj, keys::kRuntimeOnly);
    if (!runtime_only.is_boolean()) schema(keys::kRuntimeOnly, "expected a boolean");
    r.runtime_only = runtime_only.get<bool>();
    r.runtime_output = text(obj, keys::kRuntimeOutput);
    r.runtime_result = status(obj, keys::kRuntimeResult);
    r.runtime_start = timestamp(obj, keys::kRuntimeStart);
    r.test_comments = text(obj, keys::kTestComments);
    r.git_commit = text(obj, keys::kGitCommit);
    r.test_name = text(obj, keys::kTestName);
    r.test_path = text(obj, keys::kTestPath);
    r.test_system = text(obj, keys::kTestSystem);
    return r;
}

}  // namespace

std::string serialize(const std::vector<ResultRecord>& records) {
    json array = json::array();
    for (const auto& r : records) array.push_back(to_json(r));
    // Captured output may hold invalid UTF-8; it is replaced, not rejected.
    return array.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::vector<ResultRecord> parse(std::string_view input) {
    json doc;
    try {
        doc = json::parse(input.begin(), input.end());
    } catch (const json::parse_error& e) {
        throw ResultParseError(ResultParseError::Kind::JsonSyntax, "", e.what());
    }
    if (!doc.is_array()) schema("", "top level must be an array of records");

    std::vector<ResultRecord> records;
    records.reserve(doc.size());
    for (const auto& obj : doc) records.push_back(from_json(obj));
    return records;
}

std::vector<ResultSet> group_into_sets(const std::vector<ResultRecord>& records,
                                       const std::string& profile_id, const std::string& family,
                                       const VersionKey& version_key) {
    std::map<std::pair<std::string, OmpVersion>, ResultSet> groups;
    for (const auto& r : records) {
        auto& set = groups[{r.test_system, r.omp_version}];
        if (set.records.empty()) {
            set.profile_id = profile_id;
            set.family = family;
            set.version_key = version_key;
            set.system = r.test_system;
            set.omp_version = r.omp_version;
        }
        set.records.push_back(r);
    }
    std::vector<ResultSet> out;
    for (auto& [key, set] : groups) out.push_back(std::move(set));
    return out;
}

}  // namespace ompconf
