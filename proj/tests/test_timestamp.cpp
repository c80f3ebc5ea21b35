#include <doctest.h>

#include <random>

#include "ompconf/errors.hpp"
#include "ompconf/timestamp.hpp"
#include "test_support.hpp"

using namespace ompconf;
using ompconf::test::at;

namespace {

// Zeller's congruence, 0 = Sunday.
int weekday_of(int y, int m, int d) {
    if (m < 3) {
        m += 12;
        y -= 1;
    }
    const int k = y % 100, j = y / 100;
    const int h = (d + 13 * (m + 1) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;
    return (h + 6) % 7;
}

const char* const kDays[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

}  // namespace

TEST_SUITE("timestamp") {

TEST_CASE("record example") {
    CHECK(format_timestamp(at(2022, 7, 14, 16, 30, 15, "EDT")) == "Thu 14 Jul 2022 04:30:15 PM EDT");
    CHECK(parse_timestamp("Thu 14 Jul 2022 04:30:15 PM EDT") == at(2022, 7, 14, 16, 30, 15, "EDT"));
}

TEST_CASE("midnight and noon") {
    CHECK(format_timestamp(at(2000, 1, 1, 0, 0, 0)) == "Sat 01 Jan 2000 12:00:00 AM UTC");
    CHECK(format_timestamp(at(2000, 1, 1, 12, 0, 0)) == "Sat 01 Jan 2000 12:00:00 PM UTC");
    CHECK(format_timestamp(at(2000, 1, 1, 23, 59, 59)) == "Sat 01 Jan 2000 11:59:59 PM UTC");
}

TEST_CASE("zone offset is applied before formatting") {
    using namespace std::chrono;
    const sys_seconds utc = sys_days{year{2022} / 7 / 14} + hours{20} + minutes{30} + seconds{15};
    auto t = make_timestamp(utc, ZoneSpec{"EDT", minutes{-240}});
    CHECK(format_timestamp(t) == "Thu 14 Jul 2022 04:30:15 PM EDT");
}

TEST_CASE("weekday agrees with an independent calendar rule") {
    std::mt19937 rng(2022);
    std::uniform_int_distribution<int> year_d(1970, 2099), month_d(1, 12), day_d(1, 28), hour_d(0, 23), ms_d(0, 59);
    for (int i = 0; i < 500; ++i) {
        const int y = year_d(rng), mo = month_d(rng), d = day_d(rng);
        const auto t = at(y, mo, d, hour_d(rng), ms_d(rng), ms_d(rng), "UTC");
        const auto text = format_timestamp(t);
        CHECK(text.substr(0, 3) == kDays[weekday_of(y, mo, d)]);
        CHECK(parse_timestamp(text) == t);
    }
}

TEST_CASE("malformed timestamps are rejected") {
    for (const char* bad : {"", "Thu 14 Jul 2022 04:30:15 PM", "Fri 14 Jul 2022 04:30:15 PM EDT",
                            "Thu 14 Jul 2022 13:30:15 PM EDT", "Thu 14 Jul 2022 00:30:15 PM EDT",
                            "Thu 32 Jul 2022 04:30:15 PM EDT", "Thu 14 Jly 2022 04:30:15 PM EDT",
                            "Thu 14 Jul 2022 04:30:15 XM EDT", "Thu 14 Jul 2022 04:60:15 PM EDT",
                            "2022-07-14T16:30:15Z", "Thu 14 Jul 2022 04:30:15 PM  EDT"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_timestamp(bad), MalformedTimestamp);
    }
}

}
