#pragma once

#include <cstdint>
#include <string>

namespace sunsde {

/// UTC instant as seconds since the Unix epoch. All series timestamps use this.
using UtcTime = std::int64_t;

constexpr std::int64_t kSecondsPerHour = 3600;

struct CivilDateTime {
  int year;
  int month;   // 1..12
  int day;     // 1..31
  int hour;    // 0..23
  int minute;  // 0..59
  int second;  // 0..59
};

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, int month, int day);

CivilDateTime civil_from_time(UtcTime t);
UtcTime time_from_civil(const CivilDateTime& c);

/// Parses "YYYY-MM-DDTHH:MM:SSZ". Throws ParseError on anything else.
UtcTime parse_iso8601(const std::string& s);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(UtcTime t);

/// Day of year, 1..366.
int day_of_year(UtcTime t);

/// Fractional UTC hour of day in [0, 24).
double utc_hour_of_day(UtcTime t);

}  // namespace sunsde
