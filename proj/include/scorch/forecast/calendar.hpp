#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scorch::forecast {

struct CivilTime {
  int year;
  int month;        // 1..12
  int day;          // 1..31
  int hour;         // 0..23
  int minute;
  int second;
  int dayofweek;    // 0 = Monday .. 6 = Sunday
  int weekofyear;   // ISO week number, 1..53
  bool is_weekend;
  bool is_month_start;
  bool is_quarter_start;
};

CivilTime civil_from_epoch(std::int64_t epoch_seconds);

// Rule-based national holiday calendars for a fixed set of countries
// (US, DE, CN, GB, CA, AU): fixed-date holidays plus the common movable ones
// (Easter-derived, Thanksgiving-style weekday rules). Lunar-calendar holidays
// are not modeled.
bool is_holiday(std::int64_t epoch_seconds,
                const std::vector<std::string>& country_codes);

}  // namespace scorch::forecast
