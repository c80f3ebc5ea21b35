#include "ompconf/timestamp.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "ompconf/errors.hpp"

namespace ompconf {
namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 7> kDays{"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
constexpr std::array<std::string_view, 12> kMonths{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                   "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

[[noreturn]] void malformed(std::string_view text, std::string_view why) {
    throw MalformedTimestamp("malformed timestamp '" + std::string(text) + "': " + std::string(why));
}

int read_fixed(std::string_view text, std::string_view field, std::size_t width) {
    if (field.size() != width) malformed(text, "bad field width");
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) malformed(text, "non-numeric field");
    return value;
}

}  // namespace

Timestamp make_timestamp(system_clock::time_point t, const ZoneSpec& zone) {
    const auto utc = floor<seconds>(t);
    return Timestamp{local_seconds{utc.time_since_epoch()} + zone.utc_offset, zone.label};
}

std::string format_timestamp(const Timestamp& t) {
    const auto day = floor<days>(t.local);
    const year_month_day ymd{day};
    const hh_mm_ss hms{t.local - day};
    const weekday wd{day};

    const int hour24 = static_cast<int>(hms.hours().count());
    const int hour12 = hour24 % 12 == 0 ? 12 : hour24 % 12;

    char buf[64];
    std::snprintf(buf, sizeof buf, "%s %02u %s %04d %02d:%02d:%02d %s ",
                  kDays[wd.c_encoding()].data(), static_cast<unsigned>(ymd.day()),
                  kMonths[static_cast<unsigned>(ymd.month()) - 1].data(), static_cast<int>(ymd.year()),
                  hour12, static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()), hour24 < 12 ? "AM" : "PM");
    return buf + t.zone;
}

Timestamp parse_timestamp(std::string_view text) {
    // "Thu 14 Jul 2022 04:30:15 PM EDT"
    //  0   4  7   11   16       25 28
    if (text.size() < 29) malformed(text, "too short");
    auto at = [&](std::size_t pos, char expected) {
        if (text[pos] != expected) malformed(text, "unexpected separator");
    };
    at(3, ' ');
    at(6, ' ');
    at(10, ' ');
    at(15, ' ');
    at(18, ':');
    at(21, ':');
    at(24, ' ');
    at(27, ' ');

    const auto day_name = text.substr(0, 3);
    const int dom = read_fixed(text, text.substr(4, 2), 2);
    const auto month_name = text.substr(7, 3);
    const int yr = read_fixed(text, text.substr(11, 4), 4);
    const int hour12 = read_fixed(text, text.substr(16, 2), 2);
    const int minute = read_fixed(text, text.substr(19, 2), 2);
    const int second = read_fixed(text, text.substr(22, 2), 2);
    const auto meridiem = text.substr(25, 2);
    const auto zone = text.substr(28);

    unsigned month_index = 0;
    while (month_index < kMonths.size() && kMonths[month_index] != month_name) ++month_index;
    if (month_index == kMonths.size()) malformed(text, "unknown month");
    if (hour12 < 1 || hour12 > 12 || minute > 59 || second > 59) malformed(text, "time out of range");
    if (meridiem != "AM" && meridiem != "PM") malformed(text, "expected AM or PM");
    if (zone.empty() || zone.find(' ') != std::string_view::npos) malformed(text, "bad zone label");

    const year_month_day ymd{year{yr}, month{month_index + 1}, std::chrono::day{static_cast<unsigned>(dom)}};
    if (!ymd.ok()) malformed(text, "invalid calendar date");
    const auto date = local_days{ymd};
    if (kDays[weekday{date}.c_encoding()] != day_name) malformed(text, "weekday does not match date");

    const int hour24 = (hour12 % 12) + (meridiem == "PM" ? 12 : 0);
    return Timestamp{date + hours{hour24} + minutes{minute} + seconds{second}, std::string(zone)};
}

}  // namespace ompconf
