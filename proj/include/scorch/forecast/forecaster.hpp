#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "scorch/forecast/series.hpp"

namespace scorch::forecast {

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

enum class ComponentType { base, trend, seasonal, datetime, residual };

enum class BaseMethod { seasonal_naive_adaptive, median_all, rolling_median };

// A datetime feature is a single name, or a crossing of several, or the
// holiday flag with its country list.
struct DatetimeFeature {
  std::vector<std::string> names;           // crossing when size > 1
  std::vector<std::string> country_codes;   // holiday flag only
  bool is_holiday_flag = false;
};

struct ComponentSpec {
  ComponentType type = ComponentType::base;
  // base
  BaseMethod base_method = BaseMethod::median_all;
  int rolling_window = 14;
  // trend
  int degree = 1;
  double damping_factor = 1.0;   // (0, 1]
  // seasonal
  double window_multiplier = 5.0;
  // datetime
  std::vector<DatetimeFeature> features;
  // residual
  int window_size = 14;
  double decay_factor = 1.0;     // (0, 1]
};

struct ForecastConfig {
  std::string name;
  std::string description;
  std::vector<ComponentSpec> components;  // applied strictly in order
  bool transform_log = false;
  bool non_negative = false;
  int version = 4;
};

ForecastConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ForecastConfig& config);

// The eight shipped presets.
const std::vector<ForecastConfig>& builtin_configs();

// ---------------------------------------------------------------------------
// fitting
// ---------------------------------------------------------------------------

struct ComponentFit {
  std::vector<double> fitted;                  // in-sample, aligned to series
  std::function<double(int)> forecast;         // horizon h >= 1
  std::string warning;                         // nonempty on fallback paths
};

// Median-imputes missing values; applies ln(1+v) when transform_log (values
// must be nonnegative after imputation).
SeriesView preprocess(const SeriesView& series, bool transform_log);

ComponentFit fit_base(const SeriesView& series, const ComponentSpec& spec);
ComponentFit fit_trend(std::span<const double> residuals, int degree,
                       double damping_factor);
ComponentFit fit_seasonal(const SeriesView& series,
                          std::span<const double> residuals,
                          double window_multiplier);
ComponentFit fit_datetime(const SeriesView& series,
                          std::span<const double> residuals,
                          const std::vector<DatetimeFeature>& features);
ComponentFit fit_residual_correction(std::span<const double> residuals,
                                     int window_size, double decay_factor);

struct ForecastResult {
  std::vector<double> values;           // length = horizon
  std::vector<std::string> warnings;
  std::vector<std::vector<double>> component_fitted;  // per component
  std::vector<double> final_residuals;
};

// Fits components in config order, each on the residuals of the previous
// ones; sums their forecasts, undoes the log transform, clamps when
// non_negative.
ForecastResult forecast(const SeriesView& series, const ForecastConfig& config,
                        int horizon);

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

// Mean absolute scaled error against the in-sample one-step seasonal-naive
// error of the training series. Throws std::domain_error when the scaling
// denominator is zero (constant training series).
double mase(std::span<const double> forecast, std::span<const double> actuals,
            const SeriesView& training_series, int season_length);

struct SelectResult {
  ForecastConfig best;
  std::size_t best_index = 0;
  std::vector<double> per_config_mase;   // NaN for configs that failed
  std::vector<std::string> per_config_error;
  std::size_t validation_start = 0;      // index of the first validation point
  bool used_absolute_error = false;      // MASE denominator was zero
};

// Holds out the tail of the series (max(2*horizon, validation_fraction*n)
// points), fits each config on the head, scores on the tail, returns the
// lowest-MASE config (ties -> earliest). Throws when every config fails.
SelectResult select_config(const SeriesView& series,
                           const std::vector<ForecastConfig>& configs,
                           double validation_fraction, int horizon);

}  // namespace scorch::forecast
