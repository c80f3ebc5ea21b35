// Core vocabulary shared by every ompconf module.
#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ompconf {

enum class Language { C, CXX, FORTRAN };

enum class OmpVersion { V4_5, V5_0, V5_1, V5_2 };

enum class DeviceType { nvidia, amd, host, none };

// Languages are grouped the way conformance statistics are reported.
enum class LanguageGroup { C_CXX, FORTRAN };

enum class Status { PASS, FAIL };

std::string_view to_string(Language lang);
std::string_view to_string(OmpVersion version);
std::string_view to_string(DeviceType device);
std::string_view to_string(LanguageGroup group);
std::string_view to_string(Status status);

std::optional<Language> parse_language(std::string_view text);
std::optional<OmpVersion> parse_omp_version(std::string_view text);
std::optional<DeviceType> parse_device_type(std::string_view text);
std::optional<LanguageGroup> parse_language_group(std::string_view text);
std::optional<Status> parse_status(std::string_view text);

// `.c` -> C, `.cpp` -> CXX, `.F90`/`.f90` -> FORTRAN; anything else is not a test.
std::optional<Language> language_from_extension(std::string_view extension);

// Derives the language from the extension of a path-like string.
std::optional<Language> language_from_path(std::string_view path);

LanguageGroup group_of(Language lang);

// Dotted numeric version, compared component-wise with missing components as 0,
// so 21.9 < 21.11 and 10 == 10.0.0.
class VersionKey {
public:
    VersionKey() = default;
    explicit VersionKey(std::vector<int> components) : components_(std::move(components)) {}

    // First run of dot-separated integers containing at least one dot
    // ("AMD clang version 13.0.0 (... roc-4.5.0)" -> 13.0.0).
    static std::optional<VersionKey> find_dotted(std::string_view text);
    // Like find_dotted, but a bare integer run ("llvm_13") is accepted when
    // no dotted run exists.
    static std::optional<VersionKey> find_any(std::string_view text);
    // Whole-string parse of "21.11" / "13"; nullopt on anything else.
    static std::optional<VersionKey> parse(std::string_view text);

    bool empty() const { return components_.empty(); }
    const std::vector<int>& components() const { return components_; }
    std::string str() const;

    std::strong_ordering operator<=>(const VersionKey& other) const;
    bool operator==(const VersionKey& other) const;

private:
    std::vector<int> components_;
};

}  // namespace ompconf
