#include "ompconf/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ompconf {

std::string_view to_string(Language lang) {
    switch (lang) {
        case Language::C: return "C";
        case Language::CXX: return "CXX";
        case Language::FORTRAN: return "FORTRAN";
    }
    return "?";
}

std::string_view to_string(OmpVersion version) {
    switch (version) {
        case OmpVersion::V4_5: return "4.5";
        case OmpVersion::V5_0: return "5.0";
        case OmpVersion::V5_1: return "5.1";
        case OmpVersion::V5_2: return "5.2";
    }
    return "?";
}

std::string_view to_string(DeviceType device) {
    switch (device) {
        case DeviceType::nvidia: return "nvidia";
        case DeviceType::amd: return "amd";
        case DeviceType::host: return "host";
        case DeviceType::none: return "none";
    }
    return "?";
}

std::string_view to_string(LanguageGroup group) {
    return group == LanguageGroup::C_CXX ? "C/C++" : "Fortran";
}

std::string_view to_string(Status status) {
    return status == Status::PASS ? "PASS" : "FAIL";
}

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::optional<Language> parse_language(std::string_view text) {
    const auto t = lower(text);
    if (t == "c") return Language::C;
    if (t == "cxx" || t == "c++" || t == "cpp") return Language::CXX;
    if (t == "fortran" || t == "f90") return Language::FORTRAN;
    return std::nullopt;
}

std::optional<OmpVersion> parse_omp_version(std::string_view text) {
    if (text == "4.5") return OmpVersion::V4_5;
    if (text == "5.0") return OmpVersion::V5_0;
    if (text == "5.1") return OmpVersion::V5_1;
    if (text == "5.2") return OmpVersion::V5_2;
    return std::nullopt;
}

std::optional<DeviceType> parse_device_type(std::string_view text) {
    const auto t = lower(text);
    if (t == "nvidia") return DeviceType::nvidia;
    if (t == "amd") return DeviceType::amd;
    if (t == "host") return DeviceType::host;
    if (t == "none") return DeviceType::none;
    return std::nullopt;
}

std::optional<LanguageGroup> parse_language_group(std::string_view text) {
    const auto t = lower(text);
    if (t == "c/c++" || t == "c_cxx" || t == "c" || t == "cxx") return LanguageGroup::C_CXX;
    if (t == "fortran") return LanguageGroup::FORTRAN;
    return std::nullopt;
}

std::optional<Status> parse_status(std::string_view text) {
    if (text == "PASS") return Status::PASS;
    if (text == "FAIL") return Status::FAIL;
    return std::nullopt;
}

std::optional<Language> language_from_extension(std::string_view extension) {
    if (extension == ".c") return Language::C;
    if (extension == ".cpp") return Language::CXX;
    if (extension == ".F90" || extension == ".f90") return Language::FORTRAN;
    return std::nullopt;
}

std::optional<Language> language_from_path(std::string_view path) {
    const auto slash = path.find_last_of('/');
    const auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot == std::string_view::npos) return std::nullopt;
    return language_from_extension(name.substr(dot));
}

LanguageGroup group_of(Language lang) {
    return lang == Language::FORTRAN ? LanguageGroup::FORTRAN : LanguageGroup::C_CXX;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads `\d+(\.\d+)*` starting at pos; returns the components and end offset.
std::vector<int> read_run(std::string_view text, std::size_t pos, std::size_t& end) {
    std::vector<int> parts;
    while (true) {
        std::size_t stop = pos;
        while (stop < text.size() && is_digit(text[stop])) ++stop;
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + stop, value);
        if (ec != std::errc{}) value = 0;  // overlong component
        parts.push_back(value);
        end = stop;
        if (stop + 1 < text.size() && text[stop] == '.' && is_digit(text[stop + 1])) {
            pos = stop + 1;
            continue;
        }
        return parts;
    }
}

std::optional<VersionKey> scan(std::string_view text, bool require_dot) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_digit(text[i]) || (i > 0 && is_digit(text[i - 1]))) {
            ++i;
            continue;
        }
        std::size_t end = i;
        auto parts = read_run(text, i, end);
        if (!require_dot || parts.size() > 1) return VersionKey(std::move(parts));
        i = end;
    }
    return std::nullopt;
}

}  // namespace

std::optional<VersionKey> VersionKey::find_dotted(std::string_view text) {
    return scan(text, true);
}

std::optional<VersionKey> VersionKey::find_any(std::string_view text) {
    if (auto dotted = scan(text, true)) return dotted;
    return scan(text, false);
}

std::optional<VersionKey> VersionKey::parse(std::string_view text) {
    if (text.empty() || !is_digit(text.front())) return std::nullopt;
    std::size_t end = 0;
    auto parts = read_run(text, 0, end);
    if (end != text.size()) return std::nullopt;
    return VersionKey(std::move(parts));
}

std::string VersionKey::str() const {
    std::string out;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(components_[i]);
    }
    return out;
}

std::strong_ordering VersionKey::operator<=>(const VersionKey& other) const {
    const auto n = std::max(components_.size(), other.components_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int a = i < components_.size() ? components_[i] : 0;
        const int b = i < other.components_.size() ? other.components_[i] : 0;
        if (auto cmp = a <=> b; cmp != 0) return cmp;
    }
    return std::strong_ordering::equal;
}

bool VersionKey::operator==(const VersionKey& other) const {
    return (*this <=> other) == 0;
}

}  // namespace ompconf
