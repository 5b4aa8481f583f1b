#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

namespace scorch::quad {

using Integrand = std::function<double(double)>;

enum class Method { baseline, segmented_euler };

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  Method method_used = Method::baseline;
  int segments_used = 0;
  bool converged = false;
  long long evaluations = 0;
  std::string diagnostic;  // set when converged is false
};

// Contiguous cover of [a, inf): segment k has length first_length *
// growth_ratio^k (uniform when growth_ratio == 1).
struct SegmentScheme {
  double first_length = 3.14159265358979323846;
  double growth_ratio = 1.15;
  int max_segments = 60;
};

// A baseline result is accepted as final when its own convergence test
// passed and the error estimate is within this fraction of |value|; anything
// else routes to the segmented path.
inline constexpr double kBaselineAcceptRel = 0.01;

// Adaptive Gauss-Kronrod (G7-K15) with worst-interval bisection. b may be
// +infinity, in which case the integral is mapped onto [0,1) via
// x = a + t/(1-t).  converged means the QUADPACK-style error estimate met
// max(abs_tol, rel_tol*|value|) with all samples finite.
QuadResult baseline_quad(const Integrand& f, double a, double b,
                         double abs_tol, double rel_tol,
                         int max_intervals = 2048);

// Bounds of segment k under the scheme; requires k < max_segments.
std::pair<double, double> segment_bounds(double a, const SegmentScheme& scheme,
                                         int k);

struct EulerResult {
  double estimate = 0.0;
  double stability = 0.0;
};

// Series acceleration by repeated averaging of adjacent partial sums.
// The averaging table is scanned along its trailing entries and the level
// whose last entry moved least from the previous level's is returned;
// stability is that displacement. Requires at least 2 terms.
EulerResult euler_accelerate(std::span<const double> terms);

// The combined integrator for [a, inf): tries baseline_quad over the whole
// domain first and returns it untouched when accepted; otherwise sums
// segment integrals under the scheme, accelerating the series after each
// segment until the acceleration stabilizes within tol.
QuadResult integrate_oscillatory(const Integrand& f, double a,
                                 const SegmentScheme& scheme, double tol);

// The acceptance test integrate_oscillatory applies to the baseline attempt.
bool baseline_accepted(const QuadResult& r);

}  // namespace scorch::quad
