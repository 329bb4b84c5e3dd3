#include "sunsde/time_utils.hpp"

#include <cstdio>

#include "sunsde/errors.hpp"

namespace sunsde {

std::int64_t days_from_civil(int y, int m, int d) {
  // Howard Hinnant's algorithm, valid for the proleptic Gregorian calendar.
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

static void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

CivilDateTime civil_from_time(UtcTime t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  CivilDateTime c{};
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(rem / 3600);
  c.minute = static_cast<int>((rem % 3600) / 60);
  c.second = static_cast<int>(rem % 60);
  return c;
}

UtcTime time_from_civil(const CivilDateTime& c) {
  return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 + c.minute * 60 +
         c.second;
}

UtcTime parse_iso8601(const std::string& s) {
  CivilDateTime c{};
  char tsep = 0, zsep = 0;
  int n = 0;
  const int got = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c%n", &c.year, &c.month,
                              &c.day, &tsep, &c.hour, &c.minute, &c.second, &zsep, &n);
  if (got != 8 || tsep != 'T' || zsep != 'Z' || n != static_cast<int>(s.size())) {
    throw ParseError("malformed timestamp '" + s + "', expected YYYY-MM-DDTHH:MM:SSZ");
  }
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 || c.minute > 59 ||
      c.second > 59 || c.hour < 0 || c.minute < 0 || c.second < 0) {
    throw ParseError("timestamp field out of range in '" + s + "'");
  }
  return time_from_civil(c);
}

std::string format_iso8601(UtcTime t) {
  const CivilDateTime c = civil_from_time(t);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                c.hour, c.minute, c.second);
  return buf;
}

int day_of_year(UtcTime t) {
  const CivilDateTime c = civil_from_time(t);
  const std::int64_t jan1 = days_from_civil(c.year, 1, 1);
  const std::int64_t today = days_from_civil(c.year, c.month, c.day);
  return static_cast<int>(today - jan1) + 1;
}

double utc_hour_of_day(UtcTime t) {
  std::int64_t rem = t % 86400;
  if (rem < 0) rem += 86400;
  return static_cast<double>(rem) / 3600.0;
}

}  // namespace sunsde
