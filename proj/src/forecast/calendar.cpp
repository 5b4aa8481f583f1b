#include "scorch/forecast/calendar.hpp"

#include <algorithm>
#include <chrono>

namespace scorch::forecast {

namespace {

using days_t = std::chrono::sys_days;

days_t to_days(std::int64_t epoch_seconds) {
  const std::int64_t day = epoch_seconds >= 0
                               ? epoch_seconds / 86400
                               : (epoch_seconds - 86399) / 86400;
  return days_t{std::chrono::days{day}};
}

// Gregorian Easter Sunday (anonymous computus).
days_t easter_sunday(int year) {
  const int a = year % 19;
  const int b = year / 100;
  const int c = year % 100;
  const int d = b / 4;
  const int e = b % 4;
  const int f = (b + 8) / 25;
  const int g = (b - f + 1) / 3;
  const int h = (19 * a + b - d - g + 15) % 30;
  const int i = c / 4;
  const int k = c % 4;
  const int l = (32 + 2 * e + 2 * i - h - k) % 7;
  const int m = (a + 11 * h + 22 * l) / 451;
  const int month = (h + l - 7 * m + 114) / 31;
  const int day = ((h + l - 7 * m + 114) % 31) + 1;
  return days_t{std::chrono::year{year} / month / day};
}

days_t nth_weekday_of(int year, int month, std::chrono::weekday wd, int n) {
  using namespace std::chrono;
  return sys_days{year_month_weekday{std::chrono::year{year} / month /
                                     weekday_indexed{wd, static_cast<unsigned>(n)}}};
}

days_t last_weekday_of(int year, int month, std::chrono::weekday wd) {
  using namespace std::chrono;
  return sys_days{year_month_weekday_last{std::chrono::year{year}, std::chrono::month(static_cast<unsigned>(month)),
                                          weekday_last{wd}}};
}

days_t ymd(int year, int month, int day) {
  return days_t{std::chrono::year{year} / month / day};
}

bool holiday_in_country(days_t d, int year, const std::string& cc) {
  using namespace std::chrono;
  const days_t easter = easter_sunday(year);
  const days_t good_friday = easter - days{2};
  const days_t easter_monday = easter + days{1};

  if (cc == "US") {
    return d == ymd(year, 1, 1) || d == ymd(year, 7, 4) ||
           d == ymd(year, 12, 25) ||
           d == last_weekday_of(year, 5, Monday) ||      // Memorial Day
           d == nth_weekday_of(year, 9, Monday, 1) ||    // Labor Day
           d == nth_weekday_of(year, 11, Thursday, 4);   // Thanksgiving
  }
  if (cc == "DE") {
    return d == ymd(year, 1, 1) || d == good_friday || d == easter_monday ||
           d == ymd(year, 5, 1) || d == ymd(year, 10, 3) ||
           d == ymd(year, 12, 25) || d == ymd(year, 12, 26);
  }
  if (cc == "CN") {
    // Fixed-rule subset; lunar-calendar holidays are not modeled.
    return d == ymd(year, 1, 1) || d == ymd(year, 5, 1) ||
           d == ymd(year, 10, 1) || d == ymd(year, 10, 2) ||
           d == ymd(year, 10, 3);
  }
  if (cc == "GB") {
    return d == ymd(year, 1, 1) || d == good_friday || d == easter_monday ||
           d == nth_weekday_of(year, 5, Monday, 1) ||
           d == last_weekday_of(year, 5, Monday) ||
           d == last_weekday_of(year, 8, Monday) ||
           d == ymd(year, 12, 25) || d == ymd(year, 12, 26);
  }
  if (cc == "CA") {
    return d == ymd(year, 1, 1) || d == good_friday || d == ymd(year, 7, 1) ||
           d == nth_weekday_of(year, 9, Monday, 1) ||    // Labour Day
           d == nth_weekday_of(year, 10, Monday, 2) ||   // Thanksgiving (CA)
           d == ymd(year, 12, 25) || d == ymd(year, 12, 26);
  }
  if (cc == "AU") {
    return d == ymd(year, 1, 1) || d == ymd(year, 1, 26) || d == good_friday ||
           d == easter_monday || d == ymd(year, 4, 25) ||
           d == ymd(year, 12, 25) || d == ymd(year, 12, 26);
  }
  return false;
}

}  // namespace

CivilTime civil_from_epoch(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const days_t day = to_days(epoch_seconds);
  const std::int64_t secs_of_day =
      epoch_seconds - static_cast<std::int64_t>(day.time_since_epoch().count()) * 86400;

  const year_month_day date{day};
  const weekday wd{day};

  CivilTime out;
  out.year = static_cast<int>(date.year());
  out.month = static_cast<int>(static_cast<unsigned>(date.month()));
  out.day = static_cast<int>(static_cast<unsigned>(date.day()));
  out.hour = static_cast<int>(secs_of_day / 3600);
  out.minute = static_cast<int>((secs_of_day % 3600) / 60);
  out.second = static_cast<int>(secs_of_day % 60);
  out.dayofweek = static_cast<int>(wd.iso_encoding()) - 1;  // Monday = 0
  out.is_weekend = out.dayofweek >= 5;
  out.is_month_start = out.day == 1;
  out.is_quarter_start = out.day == 1 && (out.month == 1 || out.month == 4 ||
                                          out.month == 7 || out.month == 10);

  // ISO week: week containing the first Thursday of the year.
  const days_t thursday = day + (std::chrono::days{3 - out.dayofweek});
  const year_month_day thu_date{thursday};
  const days_t jan1 = days_t{thu_date.year() / 1 / 1};
  out.weekofyear =
      static_cast<int>((thursday - jan1).count()) / 7 + 1;
  return out;
}

bool is_holiday(std::int64_t epoch_seconds,
                const std::vector<std::string>& country_codes) {
  const days_t d = to_days(epoch_seconds);
  const std::chrono::year_month_day date{d};
  const int year = static_cast<int>(date.year());
  return std::any_of(country_codes.begin(), country_codes.end(),
                     [&](const std::string& cc) {
                       return holiday_in_country(d, year, cc);
                     });
}

}  // namespace scorch::forecast
