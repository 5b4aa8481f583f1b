#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "scorch/forecast/calendar.hpp"
#include "scorch/forecast/forecaster.hpp"

namespace scorch::forecast {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

double lag_autocorrelation(std::span<const double> x, int lag) {
  const std::size_t n = x.size();
  if (static_cast<std::size_t>(lag) >= n) return -1.0;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    den += (x[i] - mean) * (x[i] - mean);
  }
  if (den == 0.0) return 0.0;
  for (std::size_t i = static_cast<std::size_t>(lag); i < n; ++i) {
    num += (x[i] - mean) * (x[i - static_cast<std::size_t>(lag)] - mean);
  }
  return num / den;
}

// Cycle length from the frequency-derived candidates by maximal lag
// autocorrelation; 0 when no candidate fits two full cycles.
int detect_cycle(const SeriesView& series, std::span<const double> values) {
  int best = 0;
  double best_corr = -2.0;
  for (int candidate : cycle_candidates(series)) {
    if (values.size() < 2 * static_cast<std::size_t>(candidate)) continue;
    const double corr = lag_autocorrelation(values, candidate);
    if (corr > best_corr) {
      best_corr = corr;
      best = candidate;
    }
  }
  return best;
}

}  // namespace

SeriesView preprocess(const SeriesView& series, bool transform_log) {
  std::vector<double> present;
  present.reserve(series.size());
  for (double v : series.values) {
    if (!std::isnan(v)) present.push_back(v);
  }
  if (present.empty()) {
    throw std::invalid_argument("series has no observed values");
  }
  const double fill = median_of(present);
  SeriesView out = series;
  for (double& v : out.values) {
    if (std::isnan(v)) v = fill;
  }
  if (transform_log) {
    for (double& v : out.values) {
      if (v < 0.0) {
        throw std::invalid_argument("transform_log requires nonnegative values");
      }
      v = std::log1p(v);
    }
  }
  return out;
}

ComponentFit fit_base(const SeriesView& series, const ComponentSpec& spec) {
  const auto& y = series.values;
  const std::size_t n = y.size();
  ComponentFit fit;
  fit.fitted.resize(n);

  const double global_median = median_of(y);

  auto fit_median_all = [&] {
    std::fill(fit.fitted.begin(), fit.fitted.end(), global_median);
    fit.forecast = [global_median](int) { return global_median; };
  };

  switch (spec.base_method) {
    case BaseMethod::median_all:
      fit_median_all();
      break;
    case BaseMethod::rolling_median: {
      const int w = spec.rolling_window;
      if (w < 1) throw std::invalid_argument("rolling window must be >= 1");
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i + 1 >= static_cast<std::size_t>(w) ? i + 1 - static_cast<std::size_t>(w) : 0;
        fit.fitted[i] = median_of({y.begin() + static_cast<std::ptrdiff_t>(lo),
                                   y.begin() + static_cast<std::ptrdiff_t>(i + 1)});
      }
      const std::size_t lo = n >= static_cast<std::size_t>(w) ? n - static_cast<std::size_t>(w) : 0;
      const double level = median_of({y.begin() + static_cast<std::ptrdiff_t>(lo), y.end()});
      fit.forecast = [level](int) { return level; };
      break;
    }
    case BaseMethod::seasonal_naive_adaptive: {
      const int cycle = detect_cycle(series, y);
      if (cycle == 0) {
        fit_median_all();
        fit.warning = "no full cycle detected; seasonal naive fell back to the global median";
        return fit;
      }
      const std::size_t L = static_cast<std::size_t>(cycle);
      for (std::size_t i = 0; i < n; ++i) {
        fit.fitted[i] = i >= L ? y[i - L] : global_median;
      }
      std::vector<double> last_cycle(y.end() - static_cast<std::ptrdiff_t>(L), y.end());
      fit.forecast = [last_cycle](int h) {
        return last_cycle[static_cast<std::size_t>((h - 1)) % last_cycle.size()];
      };
      break;
    }
  }
  return fit;
}

ComponentFit fit_trend(std::span<const double> residuals, int degree,
                       double damping_factor) {
  if (degree < 0 || degree > 2) {
    throw std::invalid_argument("trend degree must be 0, 1, or 2");
  }
  if (!(damping_factor > 0.0) || damping_factor > 1.0) {
    throw std::invalid_argument("damping_factor must be in (0, 1]");
  }
  const std::size_t n = residuals.size();
  if (n < static_cast<std::size_t>(degree) + 1) {
    throw std::invalid_argument("not enough points for the trend degree");
  }

  // Least squares on the time index via normal equations (degree <= 2).
  const int terms = degree + 1;
  double ata[3][3] = {};
  double atb[3] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    double powers[3] = {1.0, t, t * t};
    for (int r = 0; r < terms; ++r) {
      for (int c = 0; c < terms; ++c) ata[r][c] += powers[r] * powers[c];
      atb[r] += powers[r] * residuals[i];
    }
  }
  // Gaussian elimination with partial pivoting on the tiny system.
  double coef[3] = {};
  {
    double m[3][4];
    for (int r = 0; r < terms; ++r) {
      for (int c = 0; c < terms; ++c) m[r][c] = ata[r][c];
      m[r][terms] = atb[r];
    }
    for (int col = 0; col < terms; ++col) {
      int pivot = col;
      for (int r = col + 1; r < terms; ++r) {
        if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
      }
      std::swap_ranges(m[col], m[col] + terms + 1, m[pivot]);
      for (int r = 0; r < terms; ++r) {
        if (r == col || m[col][col] == 0.0) continue;
        const double factor = m[r][col] / m[col][col];
        for (int c = col; c <= terms; ++c) m[r][c] -= factor * m[col][c];
      }
    }
    for (int r = 0; r < terms; ++r) {
      coef[r] = m[r][r] != 0.0 ? m[r][terms] / m[r][r] : 0.0;
    }
  }
  auto poly = [coef, terms](double t) {
    double acc = 0.0, p = 1.0;
    for (int k = 0; k < terms; ++k) {
      acc += coef[k] * p;
      p *= t;
    }
    return acc;
  };

  ComponentFit fit;
  fit.fitted.resize(n);
  for (std::size_t i = 0; i < n; ++i) fit.fitted[i] = poly(static_cast<double>(i));
  const double last = poly(static_cast<double>(n - 1));
  const double n_minus_1 = static_cast<double>(n - 1);
  fit.forecast = [poly, last, n_minus_1, damping_factor](int h) {
    const double increment = poly(n_minus_1 + h) - last;
    return last + increment * std::pow(damping_factor, h);
  };
  return fit;
}

ComponentFit fit_seasonal(const SeriesView& series,
                          std::span<const double> residuals,
                          double window_multiplier) {
  if (!(window_multiplier > 0.0)) {
    throw std::invalid_argument("window_multiplier must be positive");
  }
  const std::size_t n = residuals.size();
  ComponentFit fit;
  fit.fitted.assign(n, 0.0);

  const int cycle = detect_cycle(series, residuals);
  if (cycle == 0) {
    fit.warning = "no cycle candidate fits the series; seasonal component is zero";
    fit.forecast = [](int) { return 0.0; };
    return fit;
  }
  const std::size_t L = static_cast<std::size_t>(cycle);
  const std::size_t window_cycles =
      static_cast<std::size_t>(std::ceil(window_multiplier));
  const std::size_t window_start =
      n > window_cycles * L ? n - window_cycles * L : 0;

  std::vector<double> phase_sum(L, 0.0);
  std::vector<int> phase_count(L, 0);
  for (std::size_t i = window_start; i < n; ++i) {
    phase_sum[i % L] += residuals[i];
    phase_count[i % L] += 1;
  }
  std::vector<double> phase_mean(L, 0.0);
  for (std::size_t p = 0; p < L; ++p) {
    if (phase_count[p] > 0) phase_mean[p] = phase_sum[p] / phase_count[p];
  }
  for (std::size_t i = 0; i < n; ++i) fit.fitted[i] = phase_mean[i % L];
  fit.forecast = [phase_mean, n, L](int h) {
    return phase_mean[(n - 1 + static_cast<std::size_t>(h)) % L];
  };
  return fit;
}

ComponentFit fit_datetime(const SeriesView& series,
                          std::span<const double> residuals,
                          const std::vector<DatetimeFeature>& features) {
  const std::size_t n = residuals.size();

  auto feature_value = [](const std::string& name, const CivilTime& c,
                          std::int64_t ts,
                          const std::vector<std::string>& countries) -> int {
    if (name == "dayofweek") return c.dayofweek;
    if (name == "hour") return c.hour;
    if (name == "month") return c.month;
    if (name == "weekofyear") return c.weekofyear;
    if (name == "is_weekend") return c.is_weekend ? 1 : 0;
    if (name == "is_month_start") return c.is_month_start ? 1 : 0;
    if (name == "is_quarter_start") return c.is_quarter_start ? 1 : 0;
    if (name == "_is_holiday_flag") return is_holiday(ts, countries) ? 1 : 0;
    throw std::invalid_argument("unknown datetime feature: " + name);
  };

  auto category_key = [&](const DatetimeFeature& f, std::int64_t ts) {
    const CivilTime c = civil_from_epoch(ts);
    std::string key;
    for (const auto& name : f.names) {
      key += std::to_string(feature_value(name, c, ts, f.country_codes));
      key += '|';
    }
    return key;
  };

  // Median residual per category, each feature independently.
  std::vector<std::map<std::string, double>> medians(features.size());
  for (std::size_t fi = 0; fi < features.size(); ++fi) {
    std::map<std::string, std::vector<double>> buckets;
    for (std::size_t i = 0; i < n; ++i) {
      buckets[category_key(features[fi], series.timestamps[i])].push_back(residuals[i]);
    }
    for (auto& [key, bucket] : buckets) {
      medians[fi][key] = median_of(std::move(bucket));
    }
  }

  auto effect_at = [medians, features, category_key](std::int64_t ts) {
    double total = 0.0;
    for (std::size_t fi = 0; fi < features.size(); ++fi) {
      const auto it = medians[fi].find(category_key(features[fi], ts));
      if (it != medians[fi].end()) total += it->second;  // unseen categories add 0
    }
    return total;
  };

  ComponentFit fit;
  fit.fitted.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.fitted[i] = effect_at(series.timestamps[i]);
  }
  const std::int64_t last_ts = series.timestamps.back();
  const std::int64_t step = series.inferred_frequency;
  fit.forecast = [effect_at, last_ts, step](int h) {
    return effect_at(last_ts + step * h);
  };
  return fit;
}

ComponentFit fit_residual_correction(std::span<const double> residuals,
                                     int window_size, double decay_factor) {
  if (window_size < 1) {
    throw std::invalid_argument("window_size must be >= 1");
  }
  if (!(decay_factor > 0.0) || decay_factor > 1.0) {
    throw std::invalid_argument("decay_factor must be in (0, 1]");
  }
  const std::size_t n = residuals.size();
  const std::size_t lo = n > static_cast<std::size_t>(window_size)
                             ? n - static_cast<std::size_t>(window_size)
                             : 0;
  const double m = median_of({residuals.begin() + static_cast<std::ptrdiff_t>(lo),
                              residuals.end()});
  ComponentFit fit;
  fit.fitted.assign(n, 0.0);  // correction applies to the forecast only
  fit.forecast = [m, decay_factor](int h) {
    return m * std::pow(decay_factor, h);
  };
  return fit;
}

}  // namespace scorch::forecast
