#include "scorch/forecast/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "scorch/forecast/calendar.hpp"

namespace scorch::forecast {

SeriesView make_series(std::vector<std::int64_t> timestamps,
                       std::vector<double> values) {
  if (timestamps.size() != values.size()) {
    throw std::invalid_argument("timestamps and values must align");
  }
  if (timestamps.empty()) {
    throw std::invalid_argument("series must be nonempty");
  }
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    if (timestamps[i] <= timestamps[i - 1]) {
      throw std::invalid_argument("timestamps must be strictly increasing");
    }
  }
  SeriesView s;
  s.timestamps = std::move(timestamps);
  s.values = std::move(values);
  std::int64_t g = 0;
  for (std::size_t i = 1; i < s.timestamps.size(); ++i) {
    g = std::gcd(g, s.timestamps[i] - s.timestamps[i - 1]);
  }
  s.inferred_frequency = g == 0 ? 1 : g;
  return s;
}

FrequencyClass classify_frequency(const SeriesView& series) {
  if (series.timestamps.size() < 2) return FrequencyClass::irregular;
  // Calendar-length gaps (months, quarters, years) are detected by range
  // before falling back to the gcd delta.
  std::int64_t min_gap = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_gap = 0;
  for (std::size_t i = 1; i < series.timestamps.size(); ++i) {
    const std::int64_t gap = series.timestamps[i] - series.timestamps[i - 1];
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
  }
  constexpr std::int64_t kDay = 86400;
  if (min_gap >= 28 * kDay && max_gap <= 31 * kDay) return FrequencyClass::monthly;
  if (min_gap >= 89 * kDay && max_gap <= 92 * kDay) return FrequencyClass::quarterly;
  if (min_gap >= 365 * kDay && max_gap <= 366 * kDay) return FrequencyClass::yearly;

  const std::int64_t d = series.inferred_frequency;
  if (d < 60) return FrequencyClass::secondly;
  if (d < 3600) return FrequencyClass::minutely;
  if (d < kDay) return FrequencyClass::hourly;
  if (d == kDay) return FrequencyClass::daily;
  if (d == 7 * kDay) return FrequencyClass::weekly;
  return FrequencyClass::irregular;
}

std::vector<int> cycle_candidates(const SeriesView& series) {
  constexpr std::int64_t kHour = 3600, kDay = 86400, kWeek = 7 * 86400;
  const FrequencyClass fc = classify_frequency(series);
  switch (fc) {
    case FrequencyClass::monthly:
      return {12};
    case FrequencyClass::quarterly:
      return {4};
    case FrequencyClass::yearly:
      return {};
    case FrequencyClass::weekly:
      return {52};
    case FrequencyClass::daily:
      return {7, 365};
    default:
      break;
  }
  std::vector<int> candidates;
  const std::int64_t d = series.inferred_frequency;
  for (std::int64_t period : {kHour, kDay, kWeek}) {
    if (period > d && period % d == 0) {
      candidates.push_back(static_cast<int>(period / d));
    }
  }
  return candidates;
}

int season_length_for(const SeriesView& series) {
  for (int candidate : cycle_candidates(series)) {
    if (static_cast<std::size_t>(candidate) + 1 <= series.size()) {
      return candidate;
    }
  }
  return 1;
}

std::int64_t parse_timestamp(const std::string& text) {
  int year, month, day, hour = 0, minute = 0, second = 0;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d%n", &year, &month, &day, &consumed) != 3) {
    throw std::invalid_argument("bad timestamp: " + text);
  }
  std::string rest = text.substr(static_cast<std::size_t>(consumed));
  std::int64_t offset = 0;
  if (!rest.empty()) {
    if (rest[0] != 'T' && rest[0] != ' ') {
      throw std::invalid_argument("bad timestamp: " + text);
    }
    int tconsumed = 0;
    if (std::sscanf(rest.c_str() + 1, "%d:%d:%d%n", &hour, &minute, &second,
                    &tconsumed) != 3) {
      throw std::invalid_argument("bad timestamp: " + text);
    }
    std::string zone = rest.substr(1 + static_cast<std::size_t>(tconsumed));
    if (!zone.empty() && zone[0] == '.') {
      std::size_t i = 1;
      while (i < zone.size() && std::isdigit(static_cast<unsigned char>(zone[i]))) ++i;
      zone = zone.substr(i);
    }
    if (!zone.empty() && zone != "Z" && zone != "z") {
      int oh, om;
      if (std::sscanf(zone.c_str(), "%d:%d", &oh, &om) != 2) {
        throw std::invalid_argument("bad timestamp zone: " + text);
      }
      const std::int64_t sign = oh < 0 ? -1 : 1;
      offset = sign * (std::llabs(oh) * 3600 + om * 60);
    }
  }
  using namespace std::chrono;
  const sys_days d{std::chrono::year{year} / month / day};
  return static_cast<std::int64_t>(d.time_since_epoch().count()) * 86400 +
         hour * 3600 + minute * 60 + second - offset;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
  const CivilTime c = civil_from_epoch(epoch_seconds);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year,
                c.month, c.day, c.hour, c.minute, c.second);
  return buf;
}

SeriesView read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open series file: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty series file: " + path);
  }
  std::vector<std::int64_t> ts;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("bad series row: " + line);
    }
    ts.push_back(parse_timestamp(line.substr(0, comma)));
    const std::string value_text = line.substr(comma + 1);
    if (value_text.empty() || value_text == "nan" || value_text == "NaN") {
      vals.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      vals.push_back(std::stod(value_text));
    }
  }
  return make_series(std::move(ts), std::move(vals));
}

}  // namespace scorch::forecast
