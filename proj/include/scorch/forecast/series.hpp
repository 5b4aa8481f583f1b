#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scorch::forecast {

// A univariate time series. Missing values are NaN until preprocessing.
struct SeriesView {
  std::vector<std::int64_t> timestamps;  // epoch seconds, strictly increasing
  std::vector<double> values;
  std::int64_t inferred_frequency = 0;   // seconds; gcd of the gaps

  std::size_t size() const { return values.size(); }
};

// Validates ordering, infers the frequency, keeps NaNs as missing markers.
SeriesView make_series(std::vector<std::int64_t> timestamps,
                       std::vector<double> values);

enum class FrequencyClass {
  secondly,
  minutely,
  hourly,
  daily,
  weekly,
  monthly,
  quarterly,
  yearly,
  irregular,
};

FrequencyClass classify_frequency(const SeriesView& series);

// Candidate cycle lengths (in steps) for the frequency, longest first
// dropped: e.g. hourly -> {24, 168}, daily -> {7, 365}, monthly -> {12}.
std::vector<int> cycle_candidates(const SeriesView& series);

// Season length used for seasonal-naive MASE scaling (first cycle candidate
// that fits; 1 when none does).
int season_length_for(const SeriesView& series);

// RFC 3339 timestamp ("2024-01-31T06:00:00Z" or with offset); plain dates
// ("2024-01-31") are accepted as midnight UTC.
std::int64_t parse_timestamp(const std::string& text);
std::string format_timestamp(std::int64_t epoch_seconds);

// Delimited text with header "timestamp,value"; empty/nan values are missing.
SeriesView read_series_csv(const std::string& path);

}  // namespace scorch::forecast
