#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ovrv {

/// Uniformly sampled scalar signal: values[i] is the sample at t0 + i * dt.
struct TimeSeries {
  double t0 = 0.0;
  double dt = 0.1;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  /// Span from first to last sample.
  double duration() const { return values.empty() ? 0.0 : dt * static_cast<double>(values.size() - 1); }
};

/// Number of samples on a uniform grid covering [0, duration] inclusive.
std::size_t sample_count(double duration, double dt);

/// Checks that timestamps are strictly increasing and uniform to within
/// rel_tol * dt; returns the step (t[1] - t[0]). Throws FormatError otherwise.
double require_uniform(std::span<const double> t, double rel_tol = 1e-6);

double peak_to_peak(std::span<const double> values);

/// Root mean square of (a - b). Throws DomainError on length mismatch or empty input.
double rmse(std::span<const double> a, std::span<const double> b);

}  // namespace ovrv
