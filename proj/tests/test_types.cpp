#include <doctest.h>

#include <algorithm>
#include <random>

#include "ompconf/types.hpp"

using namespace ompconf;

TEST_SUITE("types") {

TEST_CASE("language is a function of the extension") {
    CHECK(language_from_extension(".c") == Language::C);
    CHECK(language_from_extension(".cpp") == Language::CXX);
    CHECK(language_from_extension(".F90") == Language::FORTRAN);
    CHECK(language_from_extension(".f90") == Language::FORTRAN);
    CHECK_FALSE(language_from_extension(".h"));
    CHECK_FALSE(language_from_extension(".inc"));
    CHECK_FALSE(language_from_extension(".cc"));
    CHECK(language_from_path("tests/5.0/x/test_declare_variant.F90") == Language::FORTRAN);
    CHECK_FALSE(language_from_path("tests/5.0/Makefile"));
}

TEST_CASE("version keys compare numerically per component") {
    auto v = [](const char* s) { return *VersionKey::parse(s); };
    CHECK(v("21.7") < v("21.9"));
    CHECK(v("21.9") < v("21.11"));
    CHECK(v("9.3.0") < v("10.2.0"));
    CHECK(v("10.2.0") < v("11.1.0"));
    CHECK(v("10") == v("10.0.0"));
    // The string order would put 21.11 first.
    CHECK(std::string("21.11") < std::string("21.9"));
}

TEST_CASE("version keys: sorting shuffled NVHPC versions") {
    std::vector<VersionKey> keys{*VersionKey::parse("21.11"), *VersionKey::parse("21.7"), *VersionKey::parse("21.9")};
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        std::shuffle(keys.begin(), keys.end(), rng);
        std::sort(keys.begin(), keys.end());
        CHECK(keys[0].str() == "21.7");
        CHECK(keys[1].str() == "21.9");
        CHECK(keys[2].str() == "21.11");
    }
}

TEST_CASE("version key ordering is a strict weak order on random keys") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> len(1, 4), comp(0, 12);
    auto random_key = [&] {
        std::vector<int> parts(len(rng));
        for (auto& p : parts) p = comp(rng);
        return VersionKey(parts);
    };
    for (int i = 0; i < 500; ++i) {
        auto a = random_key(), b = random_key(), c = random_key();
        CHECK_FALSE(a < a);
        if (a < b) CHECK_FALSE(b < a);
        if (a < b && b < c) CHECK(a < c);
        const bool ab_eq = !(a < b) && !(b < a);
        const bool bc_eq = !(b < c) && !(c < b);
        if (ab_eq && bc_eq) CHECK((!(a < c) && !(c < a)));
    }
}

TEST_CASE("first dotted run wins in compiler banners") {
    auto key = VersionKey::find_dotted(
        "AMD clang version 13.0.0 (https://github.com/RadeonOpenCompute/llvm-project roc-4.5.0 21422 "
        "e2489b0d7ede612d6586c61728db321047833ed8)");
    REQUIRE(key);
    CHECK(key->components() == std::vector<int>{13, 0, 0});

    CHECK(VersionKey::find_dotted("mockcc 9.3.0")->str() == "9.3.0");
    CHECK_FALSE(VersionKey::find_dotted("llvm_13"));
    CHECK(VersionKey::find_any("llvm_13")->str() == "13");
    CHECK(VersionKey::find_any("gcc-11.2.0")->str() == "11.2.0");
    CHECK_FALSE(VersionKey::find_any("mock"));
}

TEST_CASE("whole-string version parse") {
    CHECK(VersionKey::parse("13")->str() == "13");
    CHECK(VersionKey::parse("21.11")->str() == "21.11");
    CHECK_FALSE(VersionKey::parse("13a"));
    CHECK_FALSE(VersionKey::parse(""));
    CHECK_FALSE(VersionKey::parse("v13"));
}

TEST_CASE("enumeration text round-trips") {
    for (auto v : {OmpVersion::V4_5, OmpVersion::V5_0, OmpVersion::V5_1, OmpVersion::V5_2}) {
        CHECK(parse_omp_version(to_string(v)) == v);
    }
    for (auto d : {DeviceType::nvidia, DeviceType::amd, DeviceType::host, DeviceType::none}) {
        CHECK(parse_device_type(to_string(d)) == d);
    }
    CHECK(parse_status("PASS") == Status::PASS);
    CHECK_FALSE(parse_status("OK"));
    CHECK_FALSE(parse_omp_version("4.0"));
}

}
