#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "scorch/forecast/forecaster.hpp"

namespace scorch::forecast {

using nlohmann::json;

namespace {

ComponentType component_type_from(const std::string& s) {
  if (s == "base") return ComponentType::base;
  if (s == "trend") return ComponentType::trend;
  if (s == "seasonal") return ComponentType::seasonal;
  if (s == "datetime") return ComponentType::datetime;
  if (s == "residual") return ComponentType::residual;
  throw std::invalid_argument("unknown component type: " + s);
}

std::string component_type_name(ComponentType t) {
  switch (t) {
    case ComponentType::base: return "base";
    case ComponentType::trend: return "trend";
    case ComponentType::seasonal: return "seasonal";
    case ComponentType::datetime: return "datetime";
    case ComponentType::residual: return "residual";
  }
  return "?";
}

DatetimeFeature feature_from_json(const json& j) {
  DatetimeFeature f;
  if (j.is_string()) {
    f.names = {j.get<std::string>()};
  } else if (j.is_array()) {
    f.names = j.get<std::vector<std::string>>();
  } else if (j.is_object()) {
    f.names = {j.at("name").get<std::string>()};
    f.is_holiday_flag = f.names[0] == "_is_holiday_flag";
    if (j.contains("country_codes")) {
      f.country_codes = j.at("country_codes").get<std::vector<std::string>>();
    }
  } else {
    throw std::invalid_argument("bad datetime feature spec");
  }
  return f;
}

json feature_to_json(const DatetimeFeature& f) {
  if (f.is_holiday_flag || !f.country_codes.empty()) {
    return json{{"name", f.names.at(0)}, {"country_codes", f.country_codes}};
  }
  if (f.names.size() == 1) return f.names[0];
  return json(f.names);
}

void validate(const ForecastConfig& config) {
  std::set<ComponentType> seen;
  for (const auto& c : config.components) {
    if (!seen.insert(c.type).second) {
      throw std::invalid_argument("config has more than one '" +
                                  component_type_name(c.type) + "' component");
    }
    if (c.type == ComponentType::trend) {
      if (c.degree < 0 || c.degree > 2 || !(c.damping_factor > 0.0) ||
          c.damping_factor > 1.0) {
        throw std::invalid_argument("trend parameters out of range");
      }
    }
    if (c.type == ComponentType::seasonal && !(c.window_multiplier > 0.0)) {
      throw std::invalid_argument("window_multiplier must be positive");
    }
    if (c.type == ComponentType::residual &&
        (c.window_size < 1 || !(c.decay_factor > 0.0) || c.decay_factor > 1.0)) {
      throw std::invalid_argument("residual parameters out of range");
    }
  }
}

}  // namespace

ForecastConfig config_from_json(const json& j) {
  ForecastConfig config;
  config.name = j.at("name").get<std::string>();
  if (j.contains("description")) {
    config.description = j.at("description").get<std::string>();
  }
  config.transform_log = j.at("transform_log").get<bool>();
  config.non_negative = j.at("non_negative").get<bool>();
  if (j.contains("version")) config.version = j.at("version").get<int>();
  for (const auto& cj : j.at("components")) {
    ComponentSpec c;
    c.type = component_type_from(cj.at("type").get<std::string>());
    switch (c.type) {
      case ComponentType::base: {
        const std::string method = cj.at("method").get<std::string>();
        if (method == "seasonal_naive_adaptive") {
          c.base_method = BaseMethod::seasonal_naive_adaptive;
        } else if (method == "median_all") {
          c.base_method = BaseMethod::median_all;
        } else if (method == "rolling_median") {
          c.base_method = BaseMethod::rolling_median;
          if (cj.contains("window")) c.rolling_window = cj.at("window").get<int>();
        } else {
          throw std::invalid_argument("unknown base method: " + method);
        }
        break;
      }
      case ComponentType::trend:
        c.degree = cj.at("degree").get<int>();
        c.damping_factor = cj.at("damping_factor").get<double>();
        break;
      case ComponentType::seasonal:
        c.window_multiplier = cj.at("window_multiplier").get<double>();
        break;
      case ComponentType::datetime:
        for (const auto& fj : cj.at("features")) {
          c.features.push_back(feature_from_json(fj));
        }
        break;
      case ComponentType::residual:
        c.window_size = cj.at("window_size").get<int>();
        c.decay_factor = cj.at("decay_factor").get<double>();
        break;
    }
    config.components.push_back(std::move(c));
  }
  validate(config);
  return config;
}

json config_to_json(const ForecastConfig& config) {
  json components = json::array();
  for (const auto& c : config.components) {
    json cj;
    cj["type"] = component_type_name(c.type);
    switch (c.type) {
      case ComponentType::base:
        cj["method"] = c.base_method == BaseMethod::seasonal_naive_adaptive
                           ? "seasonal_naive_adaptive"
                           : c.base_method == BaseMethod::median_all
                                 ? "median_all"
                                 : "rolling_median";
        if (c.base_method == BaseMethod::rolling_median) {
          cj["window"] = c.rolling_window;
        }
        break;
      case ComponentType::trend:
        cj["method"] = "polynomial";
        cj["degree"] = c.degree;
        cj["damping_factor"] = c.damping_factor;
        break;
      case ComponentType::seasonal:
        cj["method"] = "average";
        cj["window_multiplier"] = c.window_multiplier;
        break;
      case ComponentType::datetime: {
        json features = json::array();
        for (const auto& f : c.features) features.push_back(feature_to_json(f));
        cj["features"] = features;
        break;
      }
      case ComponentType::residual:
        cj["method"] = "median";
        cj["window_size"] = c.window_size;
        cj["decay_factor"] = c.decay_factor;
        break;
    }
    components.push_back(std::move(cj));
  }
  return json{{"name", config.name},
              {"description", config.description},
              {"components", components},
              {"transform_log", config.transform_log},
              {"non_negative", config.non_negative},
              {"version", config.version}};
}

const std::vector<ForecastConfig>& builtin_configs() {
  static const std::vector<ForecastConfig> configs = [] {
    const std::vector<std::string> holiday_countries = {"US", "DE", "CN",
                                                        "GB", "CA", "AU"};
    auto parse = [](const char* text) { return config_from_json(json::parse(text)); };
    std::vector<ForecastConfig> out;

    out.push_back(parse(R"({
      "name": "seasonal_naive_baseline",
      "description": "Robust baseline: repeat the last detected cycle.",
      "components": [{"type": "base", "method": "seasonal_naive_adaptive"}],
      "transform_log": false, "non_negative": false, "version": 4})"));

    out.push_back(parse(R"({
      "name": "additive_damped_linear_LogTransform",
      "description": "General-purpose additive model on log1p scale.",
      "components": [
        {"type": "base", "method": "median_all"},
        {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 0.90},
        {"type": "seasonal", "method": "average", "window_multiplier": 5.0},
        {"type": "residual", "method": "median", "window_size": 18, "decay_factor": 0.90}],
      "transform_log": true, "non_negative": true, "version": 4})"));

    ForecastConfig date_features = parse(R"({
      "name": "date_features_seasonal",
      "description": "Robust additive model with key cyclical and datetime features.",
      "components": [
        {"type": "base", "method": "median_all"},
        {"type": "datetime", "features": [
          ["dayofweek", "hour"], "month", "is_month_start", "weekofyear",
          "is_weekend", "is_quarter_start",
          {"name": "_is_holiday_flag",
           "country_codes": ["US", "DE", "CN", "GB", "CA", "AU"]}]},
        {"type": "seasonal", "method": "average", "window_multiplier": 4.0},
        {"type": "residual", "method": "median", "window_size": 14, "decay_factor": 0.92}],
      "transform_log": false, "non_negative": false, "version": 4})");
    out.push_back(date_features);

    out.push_back(parse(R"({
      "name": "damped_quadratic_trend",
      "description": "Trend-heavy: rolling-median level with a damped quadratic.",
      "components": [
        {"type": "base", "method": "rolling_median", "window": 14},
        {"type": "trend", "method": "polynomial", "degree": 2, "damping_factor": 0.85},
        {"type": "seasonal", "method": "average", "window_multiplier": 3.0},
        {"type": "residual", "method": "median", "window_size": 10, "decay_factor": 0.85}],
      "transform_log": false, "non_negative": false, "version": 4})"));

    out.push_back(parse(R"({
      "name": "damped_linear_growth_LogTransform",
      "description": "Trend-heavy on log1p scale for exponential growth patterns.",
      "components": [
        {"type": "base", "method": "rolling_median", "window": 21},
        {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 0.95},
        {"type": "residual", "method": "median", "window_size": 12, "decay_factor": 0.90}],
      "transform_log": true, "non_negative": true, "version": 4})"));

    out.push_back(parse(R"({
      "name": "calendar_effects",
      "description": "Datetime-heavy: weekday, weekend and holiday effects only.",
      "components": [
        {"type": "base", "method": "median_all"},
        {"type": "datetime", "features": [
          "dayofweek", "is_weekend", "month",
          {"name": "_is_holiday_flag",
           "country_codes": ["US", "DE", "CN", "GB", "CA", "AU"]}]},
        {"type": "residual", "method": "median", "window_size": 14, "decay_factor": 0.90}],
      "transform_log": false, "non_negative": false, "version": 4})"));

    out.push_back(parse(R"({
      "name": "calendar_effects_LogTransform",
      "description": "Datetime-heavy on log1p scale.",
      "components": [
        {"type": "base", "method": "median_all"},
        {"type": "datetime", "features": [
          "dayofweek", "hour", "is_weekend",
          {"name": "_is_holiday_flag",
           "country_codes": ["US", "DE", "CN", "GB", "CA", "AU"]}]},
        {"type": "seasonal", "method": "average", "window_multiplier": 4.0},
        {"type": "residual", "method": "median", "window_size": 14, "decay_factor": 0.92}],
      "transform_log": true, "non_negative": true, "version": 4})"));

    out.push_back(parse(R"({
      "name": "seasonal_with_drift",
      "description": "Seasonal repetition plus a gently damped linear drift.",
      "components": [
        {"type": "base", "method": "seasonal_naive_adaptive"},
        {"type": "trend", "method": "polynomial", "degree": 1, "damping_factor": 0.95},
        {"type": "residual", "method": "median", "window_size": 8, "decay_factor": 0.95}],
      "transform_log": false, "non_negative": false, "version": 4})"));
    return out;
  }();
  return configs;
}

ForecastResult forecast(const SeriesView& series, const ForecastConfig& config,
                        int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  validate(config);

  const SeriesView prepared = preprocess(series, config.transform_log);
  ForecastResult result;

  std::vector<double> residuals = prepared.values;
  std::vector<std::function<double(int)>> forecasts;
  SeriesView working = prepared;

  for (const auto& spec : config.components) {
    working.values = residuals;
    ComponentFit fit;
    switch (spec.type) {
      case ComponentType::base:
        fit = fit_base(working, spec);
        break;
      case ComponentType::trend:
        fit = fit_trend(residuals, spec.degree, spec.damping_factor);
        break;
      case ComponentType::seasonal:
        fit = fit_seasonal(working, residuals, spec.window_multiplier);
        break;
      case ComponentType::datetime:
        fit = fit_datetime(working, residuals, spec.features);
        break;
      case ComponentType::residual:
        fit = fit_residual_correction(residuals, spec.window_size,
                                      spec.decay_factor);
        break;
    }
    if (!fit.warning.empty()) result.warnings.push_back(fit.warning);
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      residuals[i] -= fit.fitted[i];
    }
    result.component_fitted.push_back(std::move(fit.fitted));
    forecasts.push_back(std::move(fit.forecast));
  }
  result.final_residuals = residuals;

  result.values.resize(static_cast<std::size_t>(horizon));
  for (int h = 1; h <= horizon; ++h) {
    double total = 0.0;
    for (const auto& fc : forecasts) total += fc(h);
    if (config.transform_log) total = std::expm1(total);
    if (config.non_negative) total = std::max(total, 0.0);
    result.values[static_cast<std::size_t>(h - 1)] = total;
  }
  return result;
}

double mase(std::span<const double> forecast, std::span<const double> actuals,
            const SeriesView& training_series, int season_length) {
  if (forecast.size() != actuals.size() || forecast.empty()) {
    throw std::invalid_argument("forecast/actuals length mismatch");
  }
  const auto& y = training_series.values;
  if (y.size() < static_cast<std::size_t>(season_length) + 1) {
    throw std::invalid_argument("training series shorter than one season + 1");
  }
  double naive_mae = 0.0;
  std::size_t count = 0;
  for (std::size_t t = static_cast<std::size_t>(season_length); t < y.size(); ++t) {
    if (std::isnan(y[t]) || std::isnan(y[t - static_cast<std::size_t>(season_length)])) continue;
    naive_mae += std::fabs(y[t] - y[t - static_cast<std::size_t>(season_length)]);
    ++count;
  }
  if (count == 0 || naive_mae == 0.0) {
    throw std::domain_error("seasonal-naive scaling denominator is zero");
  }
  naive_mae /= static_cast<double>(count);

  double mae = 0.0;
  for (std::size_t i = 0; i < forecast.size(); ++i) {
    mae += std::fabs(forecast[i] - actuals[i]);
  }
  mae /= static_cast<double>(forecast.size());
  return mae / naive_mae;
}

SelectResult select_config(const SeriesView& series,
                           const std::vector<ForecastConfig>& configs,
                           double validation_fraction, int horizon) {
  if (configs.empty()) throw std::invalid_argument("no configs to select from");
  if (!(validation_fraction > 0.0) || validation_fraction >= 1.0) {
    throw std::invalid_argument("validation_fraction must be in (0, 1)");
  }
  const std::size_t n = series.size();
  const std::size_t val_len = std::max<std::size_t>(
      2 * static_cast<std::size_t>(horizon),
      static_cast<std::size_t>(std::ceil(validation_fraction * static_cast<double>(n))));
  if (val_len + 3 > n) {
    throw std::invalid_argument("series too short for one validation horizon");
  }
  const std::size_t head_len = n - val_len;

  SeriesView head;
  head.timestamps.assign(series.timestamps.begin(),
                         series.timestamps.begin() + static_cast<std::ptrdiff_t>(head_len));
  head.values.assign(series.values.begin(),
                     series.values.begin() + static_cast<std::ptrdiff_t>(head_len));
  head.inferred_frequency = series.inferred_frequency;

  std::span<const double> tail{series.values.data() + head_len, val_len};
  const int season = season_length_for(head);

  SelectResult result;
  result.validation_start = head_len;
  result.per_config_mase.assign(configs.size(),
                                std::numeric_limits<double>::quiet_NaN());
  result.per_config_error.assign(configs.size(), "");

  bool any_ok = false;
  std::size_t best_index = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      ForecastResult fc = forecast(head, configs[i], static_cast<int>(val_len));
      double value;
      try {
        value = mase(fc.values, tail, head, season);
      } catch (const std::domain_error&) {
        // Constant training series: fall back to plain MAE, flagged.
        result.used_absolute_error = true;
        double mae = 0.0;
        for (std::size_t k = 0; k < val_len; ++k) {
          mae += std::fabs(fc.values[k] - tail[k]);
        }
        value = mae / static_cast<double>(val_len);
      }
      result.per_config_mase[i] = value;
      if (value < best_value) {
        best_value = value;
        best_index = i;
        any_ok = true;
      }
    } catch (const std::exception& e) {
      result.per_config_error[i] = e.what();
    }
  }
  if (!any_ok) {
    std::string message = "all configs failed validation:";
    for (std::size_t i = 0; i < configs.size(); ++i) {
      message += "\n  " + configs[i].name + ": " + result.per_config_error[i];
    }
    throw std::runtime_error(message);
  }
  result.best = configs[best_index];
  result.best_index = best_index;
  return result;
}

}  // namespace scorch::forecast
