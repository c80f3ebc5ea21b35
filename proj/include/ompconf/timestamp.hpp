// Wall-clock timestamps in the record format `Thu 14 Jul 2022 04:30:15 PM EDT`.
#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace ompconf {

// Local civil time plus the zone label it was rendered for. The label is
// supplied by the run configuration, never by the OS locale.
struct Timestamp {
    std::chrono::local_seconds local{};
    std::string zone = "UTC";

    bool operator==(const Timestamp&) const = default;
};

struct ZoneSpec {
    std::string label = "UTC";
    std::chrono::minutes utc_offset{0};
};

Timestamp make_timestamp(std::chrono::system_clock::time_point t, const ZoneSpec& zone);

// `Ddd DD Mon YYYY HH:MM:SS AM|PM ZONE`.
std::string format_timestamp(const Timestamp& t);

// Exact inverse of format_timestamp; also checks the weekday against the date.
// Throws MalformedTimestamp.
Timestamp parse_timestamp(std::string_view text);

}  // namespace ompconf
