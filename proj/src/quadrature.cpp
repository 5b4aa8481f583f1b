#include "scorch/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scorch::quad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive abscissae of the 15-point Kronrod rule on [-1,1]; odd indices are
// the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct RuleResult {
  double value = 0.0;
  double error = 0.0;
  bool finite = true;
};

struct Interval {
  double a, b;
  double value, error;
};

// One G7-K15 application on [a,b] with the QUADPACK error heuristic.
RuleResult gk15(const Integrand& f, double a, double b, long long& evals) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(centr);
  ++evals;
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    fv1[j] = f(centr - absc);
    fv2[j] = f(centr + absc);
    evals += 2;
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }

  RuleResult out;
  out.value = resk * hlgth;
  resabs *= std::fabs(hlgth);
  resasc *= std::fabs(hlgth);
  out.error = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && out.error != 0.0) {
    out.error = resasc * std::min(1.0, std::pow(200.0 * out.error / resasc, 1.5));
  }
  const double epmach = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * epmach)) {
    out.error = std::max(epmach * 50.0 * resabs, out.error);
  }
  out.finite = std::isfinite(out.value) && std::isfinite(out.error);
  return out;
}

QuadResult adapt(const Integrand& f, double lo, double hi, double abs_tol,
                 double rel_tol, int max_intervals) {
  QuadResult result;
  std::vector<Interval> intervals;
  intervals.reserve(64);

  RuleResult first = gk15(f, lo, hi, result.evaluations);
  if (!first.finite) {
    result.value = first.value;
    result.error_estimate = kInf;
    result.diagnostic = "non-finite integrand sample";
    return result;
  }
  intervals.push_back({lo, hi, first.value, first.error});

  double total = first.value;
  double total_err = first.error;
  while (true) {
    if (total_err <= std::max(abs_tol, rel_tol * std::fabs(total))) {
      result.converged = true;
      break;
    }
    if (static_cast<int>(intervals.size()) >= max_intervals) {
      result.diagnostic = "interval budget exhausted";
      break;
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].error > intervals[worst].error) worst = i;
    }
    if (intervals[worst].error == 0.0) {
      result.diagnostic = "remaining error sits on roundoff-limited intervals";
      break;
    }
    Interval iv = intervals[worst];
    const double mid = 0.5 * (iv.a + iv.b);
    // Splitting below ~1000 ulp of the endpoints only manufactures roundoff
    // (and walks samples onto endpoint singularities): park the interval.
    if (!(iv.a < mid && mid < iv.b) ||
        (iv.b - iv.a) < 1e-13 * (std::fabs(iv.a) + std::fabs(iv.b) + 1e-3)) {
      intervals[worst].error = 0.0;  // total_err keeps the parked error
      continue;
    }
    RuleResult left = gk15(f, iv.a, mid, result.evaluations);
    RuleResult right = gk15(f, mid, iv.b, result.evaluations);
    if (!left.finite || !right.finite) {
      result.diagnostic = "non-finite integrand sample";
      result.converged = false;
      total = std::numeric_limits<double>::quiet_NaN();
      break;
    }
    total += left.value + right.value - iv.value;
    total_err += left.error + right.error - iv.error;
    intervals[worst] = {iv.a, mid, left.value, left.error};
    intervals.push_back({mid, iv.b, right.value, right.error});
  }

  result.value = total;
  result.error_estimate = total_err;
  if (!std::isfinite(result.value)) result.converged = false;
  return result;
}

}  // namespace

QuadResult baseline_quad(const Integrand& f, double a, double b,
                         double abs_tol, double rel_tol, int max_intervals) {
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) {
    throw std::invalid_argument("baseline_quad: tolerances must be positive");
  }
  if (std::isinf(b)) {
    // x = a + t/(1-t) maps [0,1) onto [a, inf).
    const Integrand g = [&f, a](double t) {
      const double om = 1.0 - t;
      const double x = a + t / om;
      return f(x) / (om * om);
    };
    QuadResult r = adapt(g, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
    r.method_used = Method::baseline;
    return r;
  }
  if (!(a < b)) {
    if (a == b) {
      QuadResult r;
      r.converged = true;
      return r;
    }
    throw std::invalid_argument("baseline_quad: requires a <= b");
  }
  QuadResult r = adapt(f, a, b, abs_tol, rel_tol, max_intervals);
  r.method_used = Method::baseline;
  return r;
}

std::pair<double, double> segment_bounds(double a, const SegmentScheme& scheme,
                                         int k) {
  if (k < 0 || k >= scheme.max_segments) {
    throw std::out_of_range("segment_bounds: segment index out of range");
  }
  if (!(scheme.first_length > 0.0) || !(scheme.growth_ratio >= 1.0)) {
    throw std::invalid_argument("segment_bounds: invalid scheme");
  }
  const double len0 = scheme.first_length;
  const double r = scheme.growth_ratio;
  if (r == 1.0) {
    return {a + len0 * k, a + len0 * (k + 1)};
  }
  const double lo = a + len0 * (std::pow(r, k) - 1.0) / (r - 1.0);
  const double hi = a + len0 * (std::pow(r, k + 1) - 1.0) / (r - 1.0);
  return {lo, hi};
}

EulerResult euler_accelerate(std::span<const double> terms) {
  if (terms.size() < 2) {
    throw std::invalid_argument("euler_accelerate: needs at least 2 terms");
  }
  std::vector<double> level(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i];
    level[i] = acc;
  }
  double prev_last = level.back();
  EulerResult best;
  bool have_best = false;
  while (level.size() > 1) {
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      level[i] = 0.5 * (level[i] + level[i + 1]);
    }
    level.pop_back();
    const double diff = std::fabs(level.back() - prev_last);
    if (!have_best || diff < best.stability) {
      best.estimate = level.back();
      best.stability = diff;
      have_best = true;
    }
    prev_last = level.back();
  }
  return best;
}

bool baseline_accepted(const QuadResult& r) {
  return r.converged && std::isfinite(r.value) &&
         r.error_estimate <= kBaselineAcceptRel * std::fabs(r.value);
}

QuadResult integrate_oscillatory(const Integrand& f, double a,
                                 const SegmentScheme& scheme, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("integrate_oscillatory: tol must be positive");
  }
  QuadResult base = baseline_quad(f, a, kInf, tol, tol);
  if (baseline_accepted(base)) {
    return base;
  }

  QuadResult result;
  result.method_used = Method::segmented_euler;
  result.evaluations = base.evaluations;

  const double seg_abs = tol * 1e-2;
  const double seg_rel = tol * 1e-2;
  // A segment whose own quadrature error blows past its tolerance by this
  // factor carries no usable information; the series ends there.
  const double seg_quality_floor = seg_abs * 1e3;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(scheme.max_segments));
  double err_acc = 0.0;
  EulerResult acc;
  int stable_streak = 0;  // single dips of the stability metric are spurious
  for (int k = 0; k < scheme.max_segments; ++k) {
    const auto [lo, hi] = segment_bounds(a, scheme, k);
    QuadResult seg = baseline_quad(f, lo, hi, seg_abs, seg_rel, 16384);
    result.evaluations += seg.evaluations;
    if (!std::isfinite(seg.value)) {
      result.value = std::numeric_limits<double>::quiet_NaN();
      result.error_estimate = kInf;
      result.segments_used = k + 1;
      result.diagnostic = "segment integral non-finite";
      return result;
    }
    if (!seg.converged && seg.error_estimate > seg_quality_floor) {
      result.diagnostic = "segment quadrature degraded at segment " +
                          std::to_string(k) + "; series truncated";
      break;
    }
    err_acc += seg.error_estimate;
    terms.push_back(seg.value);
    if (terms.size() >= 2) {
      acc = euler_accelerate(terms);
      result.segments_used = k + 1;
      stable_streak = acc.stability <= tol ? stable_streak + 1 : 0;
      if (stable_streak >= 2) {
        result.value = acc.estimate;
        result.error_estimate = acc.stability + err_acc;
        result.converged = true;
        return result;
      }
    }
  }
  result.value = acc.estimate;
  result.error_estimate = acc.stability + err_acc;
  if (result.diagnostic.empty()) {
    result.segments_used = scheme.max_segments;
    result.diagnostic = "acceleration did not stabilize within segment budget";
  }
  return result;
}

}  // namespace scorch::quad
