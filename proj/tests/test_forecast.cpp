#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "scorch/forecast/calendar.hpp"
#include "scorch/forecast/forecaster.hpp"
#include "scorch/rng.hpp"

using namespace scorch;
using namespace scorch::forecast;

namespace {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kStart = 1704067200;  // 2024-01-01, a Monday

SeriesView daily_series(const std::vector<double>& values) {
  std::vector<std::int64_t> ts(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ts[i] = kStart + kDay * static_cast<std::int64_t>(i);
  }
  return make_series(std::move(ts), values);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

TEST_CASE("make_series validates ordering and infers the frequency") {
  CHECK_THROWS(make_series({10, 10}, {1.0, 2.0}));
  CHECK_THROWS(make_series({10, 5}, {1.0, 2.0}));
  // A missing row leaves a double gap; the gcd still recovers the base step.
  SeriesView s = make_series({0, kDay, 3 * kDay, 4 * kDay}, {1, 2, 3, 4});
  CHECK(s.inferred_frequency == kDay);
  for (std::size_t i = 1; i < s.timestamps.size(); ++i) {
    CHECK((s.timestamps[i] - s.timestamps[i - 1]) % s.inferred_frequency == 0);
  }
}

TEST_CASE("timestamp parsing covers RFC 3339 forms") {
  CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_timestamp("1970-01-02") == kDay);
  CHECK(parse_timestamp("1970-01-01T01:00:00+01:00") == 0);
  CHECK(parse_timestamp("1970-01-01T00:00:30.500Z") == 30);
  CHECK_THROWS(parse_timestamp("bogus"));
  CHECK(format_timestamp(kDay) == "1970-01-02T00:00:00Z");
}

TEST_CASE("preprocess imputes the median and applies log1p") {
  SeriesView s = daily_series({1.0, kNaN, 3.0});
  const SeriesView imputed = preprocess(s, false);
  CHECK(imputed.values[1] == doctest::Approx(2.0));

  SeriesView intact = daily_series({4.0, 5.0});
  CHECK(preprocess(intact, false).values == intact.values);

  SeriesView logd = daily_series({0.0, std::exp(1.0) - 1.0});
  const SeriesView transformed = preprocess(logd, true);
  CHECK(transformed.values[0] == doctest::Approx(0.0));
  CHECK(transformed.values[1] == doctest::Approx(1.0));

  SeriesView negative = daily_series({-1.0, 2.0});
  CHECK_THROWS(preprocess(negative, true));
}

TEST_CASE("base methods forecast constants and medians") {
  ComponentSpec spec;
  spec.type = ComponentType::base;

  SeriesView constant = daily_series(std::vector<double>(20, 3.25));
  for (BaseMethod m : {BaseMethod::median_all, BaseMethod::rolling_median,
                       BaseMethod::seasonal_naive_adaptive}) {
    spec.base_method = m;
    const ComponentFit fit = fit_base(constant, spec);
    for (int h = 1; h <= 5; ++h) CHECK(fit.forecast(h) == doctest::Approx(3.25));
  }

  spec.base_method = BaseMethod::median_all;
  const ComponentFit med = fit_base(daily_series({1.0, 2.0, 100.0}), spec);
  CHECK(med.forecast(1) == doctest::Approx(2.0));
}

TEST_CASE("seasonal naive repeats the last full cycle") {
  std::vector<double> values;
  for (int i = 0; i < 35; ++i) values.push_back(10.0 + (i % 7) + (i / 7) * 0.0);
  // Make the last cycle distinctive to prove it is the one repeated.
  for (int p = 0; p < 7; ++p) values[28 + p] = 100.0 + p;
  ComponentSpec spec;
  spec.type = ComponentType::base;
  spec.base_method = BaseMethod::seasonal_naive_adaptive;
  const ComponentFit fit = fit_base(daily_series(values), spec);
  for (int h = 1; h <= 21; ++h) {
    CHECK(fit.forecast(h) == doctest::Approx(100.0 + (h - 1) % 7));
  }
}

TEST_CASE("seasonal naive falls back to the median below one cycle") {
  ComponentSpec spec;
  spec.type = ComponentType::base;
  spec.base_method = BaseMethod::seasonal_naive_adaptive;
  const ComponentFit fit = fit_base(daily_series({5.0, 6.0, 7.0}), spec);
  CHECK_FALSE(fit.warning.empty());
  CHECK(fit.forecast(3) == doctest::Approx(6.0));
}

TEST_CASE("trend fits exactly and damps increments") {
  std::vector<double> linear(30);
  for (int i = 0; i < 30; ++i) linear[static_cast<std::size_t>(i)] = 2.0 + 0.5 * i;

  const ComponentFit undamped = fit_trend(linear, 1, 1.0);
  const double last = 2.0 + 0.5 * 29;
  for (int h = 1; h <= 10; ++h) {
    CHECK(undamped.forecast(h) == doctest::Approx(last + 0.5 * h).epsilon(1e-9));
  }

  const ComponentFit damped = fit_trend(linear, 1, 0.5);
  for (int h = 1; h <= 5; ++h) {
    CHECK(damped.forecast(h) ==
          doctest::Approx(last + 0.5 * h * std::pow(0.5, h)).epsilon(1e-9));
  }

  std::vector<double> zeros(10, 0.0);
  const ComponentFit none = fit_trend(zeros, 2, 0.9);
  for (int h = 1; h <= 4; ++h) CHECK(none.forecast(h) == doctest::Approx(0.0));

  std::vector<double> tiny{1.0};
  CHECK_THROWS(fit_trend(tiny, 1, 1.0));
  CHECK_THROWS(fit_trend(linear, 3, 1.0));
  CHECK_THROWS(fit_trend(linear, 1, 1.5));
}

TEST_CASE("seasonal component recovers a pure pattern exactly") {
  const double pattern[7] = {2, -1, 0.5, 3, -2.5, -1, -1};
  std::vector<double> values;
  for (int i = 0; i < 35; ++i) values.push_back(pattern[i % 7]);
  SeriesView series = daily_series(values);
  const ComponentFit fit = fit_seasonal(series, series.values, 5.0);
  for (int h = 1; h <= 14; ++h) {
    CHECK(fit.forecast(h) ==
          doctest::Approx(pattern[(35 - 1 + h) % 7]).epsilon(1e-12));
  }
}

TEST_CASE("seasonal component is near zero on white noise") {
  Rng rng(31337);
  std::vector<double> values;
  for (int i = 0; i < 7 * 40; ++i) values.push_back(rng.next_double() - 0.5);
  SeriesView series = daily_series(values);
  const ComponentFit fit = fit_seasonal(series, series.values, 40.0);
  for (int h = 1; h <= 7; ++h) {
    // Phase means of iid noise shrink like 1/sqrt(cycles).
    CHECK(std::fabs(fit.forecast(h)) < 0.3 / std::sqrt(40.0) * 4);
  }
}

TEST_CASE("seasonal component is zero when no cycle fits") {
  SeriesView series = daily_series({1.0, 2.0, 3.0, 4.0, 5.0});
  const ComponentFit fit = fit_seasonal(series, series.values, 5.0);
  CHECK_FALSE(fit.warning.empty());
  for (int h = 1; h <= 3; ++h) CHECK(fit.forecast(h) == 0.0);
}

TEST_CASE("datetime component learns weekend effects by median") {
  std::vector<double> values;
  for (int i = 0; i < 70; ++i) {
    const int dow = (i) % 7;  // start date is a Monday
    values.push_back(dow >= 5 ? 1.0 : 0.0);
  }
  SeriesView series = daily_series(values);
  DatetimeFeature weekend;
  weekend.names = {"is_weekend"};
  const ComponentFit fit = fit_datetime(series, series.values, {weekend});
  for (int h = 1; h <= 14; ++h) {
    const bool is_weekend = ((70 - 1 + h) % 7) >= 5;
    CHECK(fit.forecast(h) == doctest::Approx(is_weekend ? 1.0 : 0.0));
  }

  const ComponentFit empty = fit_datetime(series, series.values, {});
  CHECK(empty.forecast(1) == 0.0);

  DatetimeFeature bogus;
  bogus.names = {"phase_of_moon"};
  CHECK_THROWS(fit_datetime(series, series.values, {bogus}));
}

TEST_CASE("holiday flag marks the configured countries' calendars") {
  const std::vector<std::string> countries = {"US", "DE", "CN",
                                              "GB", "CA", "AU"};
  CHECK(is_holiday(parse_timestamp("2024-07-04"), countries));   // US only
  CHECK(is_holiday(parse_timestamp("2024-10-03"), countries));   // DE only
  CHECK(is_holiday(parse_timestamp("2024-10-01"), countries));   // CN
  CHECK(is_holiday(parse_timestamp("2024-01-26"), countries));   // AU
  CHECK(is_holiday(parse_timestamp("2024-03-29"), countries));   // Good Friday
  CHECK_FALSE(is_holiday(parse_timestamp("2024-07-04"), {"DE"}));
  CHECK_FALSE(is_holiday(parse_timestamp("2024-03-14"), countries));
}

TEST_CASE("residual correction decays geometrically") {
  std::vector<double> residuals(30, 0.0);
  for (int i = 20; i < 30; ++i) residuals[static_cast<std::size_t>(i)] = 2.0;
  const ComponentFit fit = fit_residual_correction(residuals, 10, 0.9);
  CHECK(fit.forecast(1) == doctest::Approx(1.8));
  CHECK(fit.forecast(2) == doctest::Approx(1.62));

  const ComponentFit constant = fit_residual_correction(residuals, 10, 1.0);
  for (int h = 1; h <= 5; ++h) CHECK(constant.forecast(h) == doctest::Approx(2.0));

  std::vector<double> zeros(10, 0.0);
  const ComponentFit none = fit_residual_correction(zeros, 5, 0.8);
  CHECK(none.forecast(1) == 0.0);
}

TEST_CASE("config json round-trips the published shapes") {
  const auto& configs = builtin_configs();
  REQUIRE(configs.size() == 8);
  CHECK(configs[0].name == "seasonal_naive_baseline");
  CHECK(configs[1].name == "additive_damped_linear_LogTransform");
  CHECK(configs[1].transform_log);
  CHECK(configs[1].non_negative);
  CHECK(configs[2].name == "date_features_seasonal");

  for (const auto& config : configs) {
    const ForecastConfig round =
        config_from_json(config_to_json(config));
    CHECK(round.name == config.name);
    CHECK(round.components.size() == config.components.size());
    CHECK(round.transform_log == config.transform_log);
    CHECK(config_to_json(round) == config_to_json(config));
  }

  CHECK_THROWS(config_from_json(nlohmann::json::parse(R"({
    "name": "dup", "transform_log": false, "non_negative": false,
    "components": [{"type": "base", "method": "median_all"},
                    {"type": "base", "method": "median_all"}]})")));
}

TEST_CASE("forecast pipeline recovers level + trend + weekly seasonality") {
  // Seasonal pattern orthogonal to {1, t} so the least-squares trend line is
  // exact and phase means capture the rest: zero mean and zero first moment.
  const double pattern[7] = {1, -2, 1, 0, 0, 0, 0};
  const int cycles = 20;
  std::vector<double> values;
  for (int i = 0; i < 7 * cycles; ++i) {
    values.push_back(25.0 + 0.3 * i + pattern[i % 7]);
  }
  SeriesView series = daily_series(values);

  ForecastConfig config = config_from_json(nlohmann::json::parse(R"({
    "name": "recovery", "transform_log": false, "non_negative": false,
    "components": [
      {"type": "base", "method": "median_all"},
      {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 1.0},
      {"type": "seasonal", "method": "average", "window_multiplier": 20.0}]})"));

  const ForecastResult result = scorch::forecast::forecast(series, config, 14);
  for (int h = 1; h <= 14; ++h) {
    const int i = 7 * cycles - 1 + h;
    const double expected = 25.0 + 0.3 * i + pattern[i % 7];
    CHECK(result.values[static_cast<std::size_t>(h - 1)] ==
          doctest::Approx(expected).epsilon(1e-9));
  }

  // Decomposition identity: fitted components + final residuals = series.
  for (std::size_t i = 0; i < series.size(); ++i) {
    double total = result.final_residuals[i];
    for (const auto& fitted : result.component_fitted) total += fitted[i];
    CHECK(total == doctest::Approx(series.values[i]).epsilon(1e-10));
  }
}

TEST_CASE("non_negative clamps and transform_log round-trips constants") {
  ForecastConfig clamp = config_from_json(nlohmann::json::parse(R"({
    "name": "clamp", "transform_log": false, "non_negative": true,
    "components": [
      {"type": "base", "method": "median_all"},
      {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 1.0}]})"));
  std::vector<double> falling;
  for (int i = 0; i < 30; ++i) falling.push_back(10.0 - 1.0 * i);
  const ForecastResult clamped = scorch::forecast::forecast(daily_series(falling), clamp, 10);
  for (double v : clamped.values) CHECK(v >= 0.0);
  CHECK(clamped.values.back() == 0.0);

  const std::vector<double> constant(21, 7.5);
  ForecastConfig plain = config_from_json(nlohmann::json::parse(R"({
    "name": "p", "transform_log": false, "non_negative": false,
    "components": [{"type": "base", "method": "median_all"}]})"));
  ForecastConfig logged = plain;
  logged.transform_log = true;
  const auto direct = scorch::forecast::forecast(daily_series(constant), plain, 5);
  const auto via_log = scorch::forecast::forecast(daily_series(constant), logged, 5);
  for (int h = 0; h < 5; ++h) {
    CHECK(via_log.values[static_cast<std::size_t>(h)] ==
          doctest::Approx(direct.values[static_cast<std::size_t>(h)]).epsilon(1e-10));
  }
}

TEST_CASE("mase spot values") {
  // A perfectly periodic training series has zero in-sample seasonal-naive
  // error, so scaling is undefined by contract.
  std::vector<double> periodic;
  for (int i = 0; i < 28; ++i) periodic.push_back((i % 7) * 1.0);
  SeriesView periodic_training = daily_series(periodic);
  const std::vector<double> actual = {10, 11, 12, 13};
  CHECK_THROWS_AS(mase(actual, actual, periodic_training, 7),
                  std::domain_error);

  // Perfect forecast scores zero once the denominator is nonzero.
  std::vector<double> noisy;
  for (int i = 0; i < 28; ++i) noisy.push_back((i % 7) + (i % 2 == 0 ? 0.5 : -0.5));
  SeriesView noisy_training = daily_series(noisy);
  CHECK(mase(actual, actual, noisy_training, 7) == 0.0);

  // Forecast error exactly twice the naive in-sample scale.
  double naive = 0.0;
  for (int t = 7; t < 28; ++t) naive += std::fabs(noisy[t] - noisy[t - 7]);
  naive /= 21.0;
  std::vector<double> forecast_vals = {0, 0, 0, 0};
  std::vector<double> actual_vals = {2 * naive, -2 * naive, 2 * naive, -2 * naive};
  CHECK(mase(forecast_vals, actual_vals, noisy_training, 7) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("select_config picks the generator's own model class") {
  // Period-7 data with no trend: the seasonal-naive preset should win
  // against a pure trend model.
  const double pattern[7] = {5, 1, 4, 2, 8, 3, 9};
  std::vector<double> values;
  for (int i = 0; i < 7 * 30; ++i) values.push_back(pattern[i % 7]);
  SeriesView series = daily_series(values);

  std::vector<ForecastConfig> configs;
  configs.push_back(config_from_json(nlohmann::json::parse(R"({
    "name": "trend_only", "transform_log": false, "non_negative": false,
    "components": [
      {"type": "base", "method": "median_all"},
      {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 1.0}]})")));
  configs.push_back(builtin_configs()[0]);  // seasonal_naive_baseline

  const SelectResult selected = select_config(series, configs, 0.1, 7);
  CHECK(selected.best.name == "seasonal_naive_baseline");
  CHECK(selected.best_index == 1);
  CHECK(selected.per_config_mase[1] < selected.per_config_mase[0]);
  CHECK(selected.validation_start == series.size() - std::max<std::size_t>(14, 21));

  // Single config: returned as-is.
  const SelectResult single = select_config(series, {configs[0]}, 0.1, 7);
  CHECK(single.best.name == "trend_only");

  // Exact ties resolve to the first-listed config.
  const SelectResult tie =
      select_config(series, {configs[1], configs[1]}, 0.1, 7);
  CHECK(tie.best_index == 0);
}

TEST_CASE("select_config never fits on data past the validation boundary") {
  // Poison the tail: negative values would make the log-transform config
  // throw during fitting if the head extended into the tail.
  std::vector<double> values;
  for (int i = 0; i < 200; ++i) values.push_back(10.0 + (i % 7));
  for (int i = 180; i < 200; ++i) values[static_cast<std::size_t>(i)] = -50.0;
  SeriesView series = daily_series(values);

  ForecastConfig logged = config_from_json(nlohmann::json::parse(R"({
    "name": "logged", "transform_log": true, "non_negative": true,
    "components": [{"type": "base", "method": "median_all"}]})"));

  const SelectResult selected = select_config(series, {logged}, 0.1, 10);
  CHECK(selected.validation_start == 180);
  CHECK_FALSE(std::isnan(selected.per_config_mase[0]));  // fit succeeded on head
}
